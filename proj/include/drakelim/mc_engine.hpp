#pragma once

// Monte Carlo propagation of factor priors through the product model.
// Sampling is chunked: sample index space is split into fixed-size chunks,
// each driven by an independent substream derived from (seed, chunk index),
// so results are bit-identical for any worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "drakelim/counting_stats.hpp"
#include "drakelim/drake_model.hpp"
#include "drakelim/histogram.hpp"
#include "drakelim/rng.hpp"

namespace drakelim {

// Chunk size of the deterministic parallel layout. Results depend on this
// constant (it sets substream boundaries) but never on worker count.
inline constexpr std::uint64_t kChunkSize = 65536;

// Confidence level of the lower limit used for tail truncation in run().
inline constexpr double kTruncationConfidence = 0.95;

struct QuantilePoint {
    double q = 0.0;
    double log10_n_civ = 0.0;

    bool operator==(const QuantilePoint&) const = default;
};

// Quantile levels reported in every RunSummary.
inline const std::vector<double>& summary_quantile_levels() {
    static const std::vector<double> levels{0.01, 0.05, 0.10, 0.25, 0.50,
                                            0.75, 0.90, 0.95, 0.99};
    return levels;
}

struct RunSummary {
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    Histogram histogram;
    double frac_alone_galaxy = 0.0;        // P(n_g < 1)
    double frac_alone_universe = 0.0;      // P(n_o < 1)
    double frac_below_limit = 0.0;         // P(n_o < lower limit)
    double frac_alone_galaxy_truncated = 0.0;
    double frac_alone_universe_truncated = 0.0;
    std::vector<QuantilePoint> quantiles;  // over log10(n_g)

    bool operator==(const RunSummary&) const = default;
};

struct RunResult {
    RunSummary summary;
    std::vector<double> log10_samples;  // log10(n_g), chunk order
};

struct RunOptions {
    unsigned n_threads = 1;  // 0 = use hardware concurrency
};

// Exact fraction of samples strictly below the threshold, counted from the
// stream itself rather than histogram bins.
inline double fraction_below(std::span<const double> log10_samples, double log10_threshold) {
    if (std::isnan(log10_threshold)) {
        throw std::domain_error("fraction_below: threshold must not be NaN");
    }
    if (log10_samples.empty()) return 0.0;
    std::uint64_t below = 0;
    for (double x : log10_samples) {
        if (x < log10_threshold) ++below;
    }
    return static_cast<double>(below) / static_cast<double>(log10_samples.size());
}

namespace detail {

inline void fill_chunk(const DrakeScenario& scenario, std::uint64_t chunk,
                       std::span<double> log10_samples) {
    RandomEngine engine = make_substream(scenario.seed, chunk);
    const std::uint64_t begin = chunk * kChunkSize;
    const std::uint64_t end =
        std::min<std::uint64_t>(begin + kChunkSize, log10_samples.size());
    for (std::uint64_t i = begin; i < end; ++i) {
        log10_samples[i] = draw_n_civ(scenario, engine).log10();
    }
}

inline double quantile_of_sorted(std::span<const double> sorted, double q) {
    // Linear interpolation between order statistics (type 7).
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    const double a = sorted[lo];
    const double b = sorted[lo + 1];
    if (frac == 0.0 || a == b) return a;
    // Interpolating against an infinite order statistic (zero-valued draws
    // map to log10 = -inf) is meaningless; snap to the nearer one.
    if (!std::isfinite(a) || !std::isfinite(b)) return frac < 0.5 ? a : b;
    return a + frac * (b - a);
}

}  // namespace detail

inline RunResult run_with_samples(const DrakeScenario& scenario, const RunOptions& options = {}) {
    validate_or_throw(scenario);

    const std::uint64_t n = scenario.n_samples;
    const std::uint64_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> log10_samples(n);

    std::uint64_t n_workers =
        options.n_threads == 0
            ? std::max(1u, std::thread::hardware_concurrency())
            : options.n_threads;
    n_workers = std::min(n_workers, n_chunks);

    if (n_workers <= 1) {
        for (std::uint64_t chunk = 0; chunk < n_chunks; ++chunk) {
            detail::fill_chunk(scenario, chunk, log10_samples);
        }
    } else {
        std::atomic<std::uint64_t> next_chunk{0};
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::uint64_t w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t chunk;
                     (chunk = next_chunk.fetch_add(1)) < n_chunks;) {
                    detail::fill_chunk(scenario, chunk, log10_samples);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // Accumulate single-threaded over the chunk-ordered stream so the
    // summary is identical no matter how chunks were assigned above.
    RunSummary s;
    s.n_samples = n;
    s.seed = scenario.seed;
    s.histogram = Histogram(scenario.histogram);

    const double log10_ratio = std::log10(scenario.star_ratio());
    const double alone_universe_threshold = -log10_ratio;
    const double limit_threshold =
        std::log10(lower_limit(kTruncationConfidence).n_lower) - log10_ratio;

    std::uint64_t alone_g = 0;
    std::uint64_t alone_u = 0;
    std::uint64_t below_limit = 0;
    for (double x : log10_samples) {
        s.histogram.add(x);
        if (x < 0.0) ++alone_g;
        if (x < alone_universe_threshold) ++alone_u;
        if (x < limit_threshold) ++below_limit;
    }

    const auto dn = static_cast<double>(n);
    s.frac_alone_galaxy = static_cast<double>(alone_g) / dn;
    s.frac_alone_universe = static_cast<double>(alone_u) / dn;
    s.frac_below_limit = static_cast<double>(below_limit) / dn;

    // Truncation renormalizes the surviving sample set; evaluated as a
    // literal double expression so the reported identity holds exactly.
    // An empty surviving set (everything excluded) has no conditional
    // fraction; report 0 rather than 0/0.
    if (s.frac_below_limit == 1.0) {
        s.frac_alone_galaxy_truncated = 0.0;
        s.frac_alone_universe_truncated = 0.0;
    } else {
        s.frac_alone_galaxy_truncated =
            (s.frac_alone_galaxy - s.frac_below_limit) / (1.0 - s.frac_below_limit);
        s.frac_alone_universe_truncated =
            (s.frac_alone_universe - s.frac_below_limit) / (1.0 - s.frac_below_limit);
    }

    std::vector<double> sorted(log10_samples);
    std::sort(sorted.begin(), sorted.end());
    for (double q : summary_quantile_levels()) {
        s.quantiles.push_back({q, detail::quantile_of_sorted(sorted, q)});
    }

    return RunResult{std::move(s), std::move(log10_samples)};
}

inline RunSummary run(const DrakeScenario& scenario, const RunOptions& options = {}) {
    return run_with_samples(scenario, options).summary;
}

}  // namespace drakelim
