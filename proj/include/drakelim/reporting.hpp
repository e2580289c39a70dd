#pragma once

// Result serialization: the second-civilization curve, the JSON summary
// document, CSV exports for histogram/curve, and the stdout fraction block.
//
// Formatting contract: JSON and CSV carry shortest-round-trip full-precision
// numbers; human-facing output (stdout, the "display" block in the summary
// document) uses 6 significant digits.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "drakelim/counting_stats.hpp"
#include "drakelim/drake_model.hpp"
#include "drakelim/mc_engine.hpp"
#include "drakelim/scenario_io.hpp"
#include "drakelim/version.hpp"

namespace drakelim {

// ---- number formatting ------------------------------------------------------

inline std::string format_sig(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// Shortest representation that parses back to the identical double.
inline std::string format_full(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, result.ptr);
}

// JSON has no literal for infinities; encode them as strings.
inline nlohmann::json json_real(double x) {
    if (std::isfinite(x)) return x;
    return format_full(x);
}

inline double real_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw std::invalid_argument(where + ": expected a real number");
}

inline std::string utc_timestamp_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---- second-civilization curve ----------------------------------------------

struct CurvePoint {
    double n_civ = 0.0;
    double p_second = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

enum class CurveSpacing { linear, log };

inline CurveSpacing curve_spacing_from_name(std::string_view name) {
    if (name == "linear") return CurveSpacing::linear;
    if (name == "log") return CurveSpacing::log;
    throw std::invalid_argument("spacing must be \"linear\" or \"log\" (got \"" +
                                std::string(name) + "\")");
}

inline constexpr double kCurveDefaultMin = 1e-3;
inline constexpr double kCurveDefaultMax = 1e2;
inline constexpr std::uint64_t kCurveDefaultPoints = 101;

inline std::vector<CurvePoint> emit_curve(double n_min, double n_max, std::uint64_t n_points,
                                          CurveSpacing spacing) {
    if (!std::isfinite(n_min) || !std::isfinite(n_max) || !(n_min >= 0.0) || !(n_min < n_max)) {
        throw std::domain_error("emit_curve: requires finite 0 <= n_min < n_max");
    }
    if (n_points < 2) {
        throw std::domain_error("emit_curve: n_points must be at least 2");
    }
    if (spacing == CurveSpacing::log && !(n_min > 0.0)) {
        throw std::domain_error("emit_curve: log spacing requires n_min > 0");
    }
    std::vector<CurvePoint> points;
    points.reserve(n_points);
    const double lo = spacing == CurveSpacing::log ? std::log(n_min) : n_min;
    const double hi = spacing == CurveSpacing::log ? std::log(n_max) : n_max;
    for (std::uint64_t i = 0; i < n_points; ++i) {
        double n;
        if (i == 0) {
            n = n_min;  // endpoints exact, not reconstructed
        } else if (i == n_points - 1) {
            n = n_max;
        } else {
            const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
            const double v = lo + t * (hi - lo);
            n = spacing == CurveSpacing::log ? std::exp(v) : v;
        }
        points.push_back({n, p_second_given_first(n)});
    }
    return points;
}

inline std::vector<CurvePoint> evaluate_curve(std::span<const double> grid) {
    std::vector<CurvePoint> points;
    points.reserve(grid.size());
    for (double n : grid) points.push_back({n, p_second_given_first(n)});
    return points;
}

inline std::string curve_csv(std::span<const CurvePoint> points) {
    std::string out = "n_civ,p_second_given_first\n";
    for (const auto& p : points) {
        out += format_full(p.n_civ);
        out += ',';
        out += format_full(p.p_second);
        out += '\n';
    }
    return out;
}

// ---- histogram CSV ------------------------------------------------------------

// One row per bin plus underflow/overflow rows with infinite outer edges.
// density = count / (n_samples * bin_width); rows of infinite width get 0.
inline std::string histogram_csv(const RunSummary& s) {
    const Histogram& h = s.histogram;
    const HistogramSpec& spec = h.spec();
    std::string out = "bin_low_log10,bin_high_log10,count,density\n";
    const double norm =
        s.n_samples > 0 ? 1.0 / (static_cast<double>(s.n_samples) * spec.bin_width()) : 0.0;
    auto row = [&out](const std::string& lo, const std::string& hi, std::uint64_t count,
                      double density) {
        out += lo;
        out += ',';
        out += hi;
        out += ',';
        out += std::to_string(count);
        out += ',';
        out += format_full(density);
        out += '\n';
    };
    row("-inf", format_full(spec.log10_min), h.underflow(), 0.0);
    for (std::uint64_t i = 0; i < spec.n_bins; ++i) {
        row(format_full(h.bin_low(i)), format_full(h.bin_high(i)), h.counts()[i],
            static_cast<double>(h.counts()[i]) * norm);
    }
    row(format_full(spec.log10_max), "inf", h.overflow(), 0.0);
    return out;
}

// Raw-sample dump: one log10(n_g) per line, for offline recomputation.
inline std::string raw_samples_text(std::span<const double> log10_samples) {
    std::string out;
    out.reserve(log10_samples.size() * 20);
    for (double x : log10_samples) {
        out += format_full(x);
        out += '\n';
    }
    return out;
}

// ---- summary document ----------------------------------------------------------

inline std::string_view limit_context_name(LimitContext c) {
    switch (c) {
        case LimitContext::universe: return "universe";
        case LimitContext::galaxy: return "galaxy";
        case LimitContext::custom: return "custom";
    }
    throw std::logic_error("limit_context_name: unhandled context");
}

inline LimitContext limit_context_from_name(std::string_view name) {
    if (name == "universe") return LimitContext::universe;
    if (name == "galaxy") return LimitContext::galaxy;
    if (name == "custom") return LimitContext::custom;
    throw std::invalid_argument("unknown limit context \"" + std::string(name) + "\"");
}

inline nlohmann::json to_json(const LimitResult& r) {
    return nlohmann::json{{"confidence", r.confidence},
                          {"n_lower", r.n_lower},
                          {"context", limit_context_name(r.context)},
                          {"star_ratio", r.star_ratio}};
}

inline LimitResult limit_from_json(const nlohmann::json& j) {
    LimitResult r;
    r.confidence = real_from_json(detail::require_field(j, "confidence", "limit"), "confidence");
    r.n_lower = real_from_json(detail::require_field(j, "n_lower", "limit"), "n_lower");
    r.context =
        limit_context_from_name(detail::require_field(j, "context", "limit").get<std::string>());
    r.star_ratio = real_from_json(detail::require_field(j, "star_ratio", "limit"), "star_ratio");
    return r;
}

inline nlohmann::json to_json(const Histogram& h) {
    return nlohmann::json{{"spec", to_json(h.spec())},
                          {"underflow", h.underflow()},
                          {"overflow", h.overflow()},
                          {"counts", h.counts()}};
}

inline Histogram histogram_from_json(const nlohmann::json& j) {
    Histogram h(histogram_spec_from_json(detail::require_field(j, "spec", "histogram")));
    const auto& counts = detail::require_field(j, "counts", "histogram");
    if (!counts.is_array()) {
        throw std::invalid_argument("histogram: \"counts\" must be an array");
    }
    h.set_counts(counts.get<std::vector<std::uint64_t>>(),
                 detail::require_field(j, "underflow", "histogram").get<std::uint64_t>(),
                 detail::require_field(j, "overflow", "histogram").get<std::uint64_t>());
    return h;
}

inline nlohmann::json to_json(const RunSummary& s) {
    nlohmann::json quantiles = nlohmann::json::array();
    for (const auto& qp : s.quantiles) {
        quantiles.push_back(
            nlohmann::json{{"q", qp.q}, {"log10_n_civ", json_real(qp.log10_n_civ)}});
    }
    return nlohmann::json{{"n_samples", s.n_samples},
                          {"seed", s.seed},
                          {"histogram", to_json(s.histogram)},
                          {"frac_alone_galaxy", s.frac_alone_galaxy},
                          {"frac_alone_universe", s.frac_alone_universe},
                          {"frac_below_limit", s.frac_below_limit},
                          {"frac_alone_galaxy_truncated", s.frac_alone_galaxy_truncated},
                          {"frac_alone_universe_truncated", s.frac_alone_universe_truncated},
                          {"quantiles", std::move(quantiles)}};
}

inline RunSummary run_summary_from_json(const nlohmann::json& j) {
    RunSummary s;
    s.n_samples = detail::require_field(j, "n_samples", "summary").get<std::uint64_t>();
    s.seed = detail::require_field(j, "seed", "summary").get<std::uint64_t>();
    s.histogram = histogram_from_json(detail::require_field(j, "histogram", "summary"));
    s.frac_alone_galaxy = real_from_json(
        detail::require_field(j, "frac_alone_galaxy", "summary"), "frac_alone_galaxy");
    s.frac_alone_universe = real_from_json(
        detail::require_field(j, "frac_alone_universe", "summary"), "frac_alone_universe");
    s.frac_below_limit = real_from_json(detail::require_field(j, "frac_below_limit", "summary"),
                                        "frac_below_limit");
    s.frac_alone_galaxy_truncated =
        real_from_json(detail::require_field(j, "frac_alone_galaxy_truncated", "summary"),
                       "frac_alone_galaxy_truncated");
    s.frac_alone_universe_truncated =
        real_from_json(detail::require_field(j, "frac_alone_universe_truncated", "summary"),
                       "frac_alone_universe_truncated");
    const auto& quantiles = detail::require_field(j, "quantiles", "summary");
    if (!quantiles.is_array()) {
        throw std::invalid_argument("summary: \"quantiles\" must be an array");
    }
    for (const auto& qj : quantiles) {
        s.quantiles.push_back(
            {real_from_json(detail::require_field(qj, "q", "quantile"), "q"),
             real_from_json(detail::require_field(qj, "log10_n_civ", "quantile"),
                            "log10_n_civ")});
    }
    return s;
}

// The full machine-readable document: summary, limits, scenario echo,
// tool version, and the (sole non-deterministic) generation timestamp.
inline nlohmann::json summary_document(const RunSummary& s, std::span<const LimitResult> limits,
                                       const DrakeScenario& scenario,
                                       const std::string& generated_at) {
    nlohmann::json limits_json = nlohmann::json::array();
    for (const auto& r : limits) limits_json.push_back(to_json(r));
    nlohmann::json display{
        {"frac_alone_galaxy", format_sig(s.frac_alone_galaxy)},
        {"frac_alone_universe", format_sig(s.frac_alone_universe)},
        {"frac_below_limit", format_sig(s.frac_below_limit)},
        {"frac_alone_galaxy_truncated", format_sig(s.frac_alone_galaxy_truncated)},
        {"frac_alone_universe_truncated", format_sig(s.frac_alone_universe_truncated)}};
    return nlohmann::json{{"tool", kToolName},
                          {"version", kVersion},
                          {"generated_at", generated_at},
                          {"scenario", to_json(scenario)},
                          {"limits", std::move(limits_json)},
                          {"summary", to_json(s)},
                          {"display", std::move(display)}};
}

struct SummaryDocument {
    std::string version;
    std::string generated_at;
    DrakeScenario scenario;
    std::vector<LimitResult> limits;
    RunSummary summary;
};

inline SummaryDocument parse_summary_document(const nlohmann::json& doc) {
    SummaryDocument out;
    out.version = detail::require_field(doc, "version", "document").get<std::string>();
    out.generated_at = detail::require_field(doc, "generated_at", "document").get<std::string>();
    out.scenario = scenario_from_json(detail::require_field(doc, "scenario", "document"));
    const auto& limits = detail::require_field(doc, "limits", "document");
    if (!limits.is_array()) {
        throw std::invalid_argument("document: \"limits\" must be an array");
    }
    for (const auto& lj : limits) out.limits.push_back(limit_from_json(lj));
    out.summary = run_summary_from_json(detail::require_field(doc, "summary", "document"));
    return out;
}

inline std::string emit_summary(const RunSummary& s, std::span<const LimitResult> limits,
                                const DrakeScenario& scenario,
                                const std::string& generated_at) {
    return summary_document(s, limits, scenario, generated_at).dump(2) + "\n";
}

// ---- stdout fraction block -----------------------------------------------------

// The four headline fractions, raw and limit-truncated.
inline std::string fraction_block(const RunSummary& s) {
    char buf[160];
    std::string out = "fraction alone         galaxy       universe\n";
    std::snprintf(buf, sizeof buf, "full distribution      %-12s %s\n",
                  format_sig(s.frac_alone_galaxy).c_str(),
                  format_sig(s.frac_alone_universe).c_str());
    out += buf;
    std::snprintf(buf, sizeof buf, "limit-truncated        %-12s %s\n",
                  format_sig(s.frac_alone_galaxy_truncated).c_str(),
                  format_sig(s.frac_alone_universe_truncated).c_str());
    out += buf;
    return out;
}

}  // namespace drakelim
