#pragma once

// Per-factor prior distributions: log-uniform, log-normal, fixed value, and
// the compound life-rate transform 1 - exp(-rate) over a nested rate prior.

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drakelim/math.hpp"
#include "drakelim/rng.hpp"

namespace drakelim {

// Density proportional to 1/x on [lo, hi]; the base-e exponent is uniform.
struct LogUniform {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const LogUniform&) const = default;
};

// ln(draw) ~ Normal(mu_ln, sigma_ln^2).
struct LogNormal {
    double mu_ln = 0.0;
    double sigma_ln = 0.0;
    bool operator==(const LogNormal&) const = default;
};

struct Fixed {
    double value = 0.0;
    bool operator==(const Fixed&) const = default;
};

class PriorSpec;

// Sampled factor is 1 - exp(-x) with x drawn from the nested rate prior.
// Nesting another LifeRate inside is rejected by validate().
struct LifeRate {
    std::shared_ptr<const PriorSpec> rate_prior;
    bool operator==(const LifeRate& other) const;
};

enum class PriorKind { log_uniform, log_normal, fixed, life_rate };

inline std::string_view prior_kind_name(PriorKind k) {
    switch (k) {
        case PriorKind::log_uniform: return "log_uniform";
        case PriorKind::log_normal: return "log_normal";
        case PriorKind::fixed: return "fixed";
        case PriorKind::life_rate: return "life_rate";
    }
    return "?";
}

// Tagged description of one factor's sampling distribution.
class PriorSpec {
public:
    using Node = std::variant<LogUniform, LogNormal, Fixed, LifeRate>;

    PriorSpec() : node_(Fixed{0.0}) {}
    PriorSpec(LogUniform x) : node_(x) {}
    PriorSpec(LogNormal x) : node_(x) {}
    PriorSpec(Fixed x) : node_(x) {}
    PriorSpec(LifeRate x) : node_(std::move(x)) {}

    static PriorSpec log_uniform(double lo, double hi) { return PriorSpec{LogUniform{lo, hi}}; }
    static PriorSpec log_normal(double mu_ln, double sigma_ln) {
        return PriorSpec{LogNormal{mu_ln, sigma_ln}};
    }
    static PriorSpec fixed(double value) { return PriorSpec{Fixed{value}}; }
    static PriorSpec life_rate(PriorSpec rate) {
        return PriorSpec{LifeRate{std::make_shared<const PriorSpec>(std::move(rate))}};
    }

    const Node& node() const { return node_; }

    PriorKind kind() const { return static_cast<PriorKind>(node_.index()); }

    template <typename T>
    const T& as() const { return std::get<T>(node_); }

    bool operator==(const PriorSpec& other) const { return node_ == other.node_; }

private:
    Node node_;
};

inline bool LifeRate::operator==(const LifeRate& other) const {
    if (rate_prior == other.rate_prior) return true;
    if (!rate_prior || !other.rate_prior) return false;
    return *rate_prior == *other.rate_prior;
}

namespace detail {

inline std::string num_str(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace detail

// Every rule violation, one message per rule, naming field and rule.
// An empty result means the prior is valid.
inline std::vector<std::string> validate(const PriorSpec& spec) {
    std::vector<std::string> bad;
    const auto note = [&](std::string msg) { bad.push_back(std::move(msg)); };

    if (const auto* u = std::get_if<LogUniform>(&spec.node())) {
        if (!(std::isfinite(u->lo) && u->lo > 0.0)) {
            note("log_uniform.lo: must be a finite positive real (got " + detail::num_str(u->lo) + ")");
        }
        if (!std::isfinite(u->hi)) {
            note("log_uniform.hi: must be a finite real (got " + detail::num_str(u->hi) + ")");
        }
        if (!(u->lo < u->hi)) {
            note("log_uniform: requires lo < hi (got lo=" + detail::num_str(u->lo) +
                 ", hi=" + detail::num_str(u->hi) + ")");
        }
    } else if (const auto* n = std::get_if<LogNormal>(&spec.node())) {
        if (!std::isfinite(n->mu_ln)) {
            note("log_normal.mu_ln: must be a finite real (got " + detail::num_str(n->mu_ln) + ")");
        }
        if (!(std::isfinite(n->sigma_ln) && n->sigma_ln > 0.0)) {
            note("log_normal.sigma_ln: must be a finite positive real (got " +
                 detail::num_str(n->sigma_ln) + ")");
        }
    } else if (const auto* f = std::get_if<Fixed>(&spec.node())) {
        if (!(std::isfinite(f->value) && f->value >= 0.0)) {
            note("fixed.value: must be a finite non-negative real (got " +
                 detail::num_str(f->value) + ")");
        }
    } else if (const auto* r = std::get_if<LifeRate>(&spec.node())) {
        if (!r->rate_prior) {
            note("life_rate.rate_prior: missing nested prior");
        } else if (r->rate_prior->kind() == PriorKind::life_rate) {
            note("life_rate.rate_prior: nesting another life_rate is not allowed");
        } else {
            for (const auto& msg : validate(*r->rate_prior)) {
                note("life_rate.rate_prior: " + msg);
            }
        }
    }
    return bad;
}

inline bool is_valid(const PriorSpec& spec) { return validate(spec).empty(); }

inline void validate_or_throw(const PriorSpec& spec, std::string_view what = "prior") {
    const auto bad = validate(spec);
    if (bad.empty()) return;
    std::string msg{what};
    msg += ": invalid specification";
    for (const auto& b : bad) {
        msg += "\n  - " + b;
    }
    throw std::invalid_argument(msg);
}

// One draw. Requires a valid spec. All draws are finite and >= 0;
// life_rate draws stay strictly below 1 (results that would round to 1 are
// nudged to the previous double).
template <typename URBG>
double sample(const PriorSpec& spec, URBG& rng) {
    struct Visitor {
        URBG& rng;
        double operator()(const LogUniform& u) const {
            const double ln_lo = std::log(u.lo);
            const double ln_hi = std::log(u.hi);
            const double x = std::exp(ln_lo + uniform_open(rng) * (ln_hi - ln_lo));
            return std::min(std::max(x, u.lo), u.hi);
        }
        double operator()(const LogNormal& n) const {
            return std::exp(n.mu_ln + n.sigma_ln * normal_standard(rng));
        }
        double operator()(const Fixed& f) const { return f.value; }
        double operator()(const LifeRate& r) const {
            const double x = sample(*r.rate_prior, rng);
            const double p = one_minus_exp_neg(x);
            return (p < 1.0) ? p : std::nextafter(1.0, 0.0);
        }
    };
    return std::visit(Visitor{rng}, spec.node());
}

// Inverse CDF. For life_rate this composes through the monotone transform:
// quantile = 1 - exp(-quantile of the rate prior). Boundary values q=0 / q=1
// return the support closure (which may be 0, +inf, or 1).
inline double quantile(const PriorSpec& spec, double q) {
    if (std::isnan(q) || q < 0.0 || q > 1.0) {
        throw std::domain_error("quantile: q must lie in [0, 1]");
    }
    struct Visitor {
        double q;
        double operator()(const LogUniform& u) const {
            if (q == 0.0) return u.lo;
            if (q == 1.0) return u.hi;
            const double ln_lo = std::log(u.lo);
            const double x = std::exp(ln_lo + q * (std::log(u.hi) - ln_lo));
            return std::min(std::max(x, u.lo), u.hi);
        }
        double operator()(const LogNormal& n) const {
            return std::exp(n.mu_ln + n.sigma_ln * inverse_normal_cdf(q));
        }
        double operator()(const Fixed& f) const { return f.value; }
        double operator()(const LifeRate& r) const {
            return one_minus_exp_neg(quantile(*r.rate_prior, q));
        }
    };
    return std::visit(Visitor{q}, spec.node());
}

// Closure of the attainable values.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

inline Interval support(const PriorSpec& spec) {
    struct Visitor {
        Interval operator()(const LogUniform& u) const { return {u.lo, u.hi}; }
        Interval operator()(const LogNormal&) const {
            return {0.0, std::numeric_limits<double>::infinity()};
        }
        Interval operator()(const Fixed& f) const { return {f.value, f.value}; }
        Interval operator()(const LifeRate& r) const {
            const Interval inner = support(*r.rate_prior);
            return {one_minus_exp_neg(inner.lo), one_minus_exp_neg(inner.hi)};
        }
    };
    return std::visit(Visitor{}, spec.node());
}

}  // namespace drakelim
