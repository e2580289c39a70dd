#pragma once

// Closed-form counting statistics for the "humanity observed" experiment:
// occurrence probabilities (binomial-exact and Poisson), the conditional
// second-civilization probability, and frequentist lower limits on the
// expected count.

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "drakelim/math.hpp"

namespace drakelim {

// One class of habitable planets: N_H planets, each hosting an active
// communicating civilization with probability p_life.
struct PlanetClass {
    double n_habitable = 0.0;
    double p_life = 0.0;
};

enum class LimitContext { universe, galaxy, custom };

// A confidence level with its derived lower limit on the expected count.
// star_ratio records the multiplier applied relative to the reference
// (observable-universe) construction, 1 for the unscaled limit.
struct LimitResult {
    double confidence = 0.0;
    double n_lower = 0.0;
    LimitContext context = LimitContext::universe;
    double star_ratio = 1.0;

    bool operator==(const LimitResult&) const = default;
};

// P(n_obs >= 1 | n_civ) = 1 - e^(-n_civ). For n_civ << 1 this is ~n_civ.
inline double p_at_least_one(double n_civ) {
    if (std::isnan(n_civ) || n_civ < 0.0) {
        throw std::domain_error("p_at_least_one: n_civ must be non-negative");
    }
    return one_minus_exp_neg(n_civ);
}

// Log-domain overload for expectations too small to represent linearly:
// the probability equals the expectation to within its own magnitude there.
inline double p_at_least_one(const LogScalar& n_civ) {
    return one_minus_exp_neg(n_civ.linear());
}

// Exact binomial form P(n_obs >= 1) = 1 - (1 - p)^N, evaluated through the
// exponent N * log1p(-p) so enormous N keeps full precision.
inline double p_at_least_one_exact(double p_life, double n_habitable) {
    if (!(p_life >= 0.0 && p_life <= 1.0)) {
        throw std::domain_error("p_at_least_one_exact: p_life must lie in [0, 1]");
    }
    if (!(n_habitable > 0.0)) {
        throw std::domain_error("p_at_least_one_exact: n_habitable must be positive");
    }
    if (p_life == 1.0) return 1.0;
    return -std::expm1(n_habitable * std::log1p(-p_life));
}

// Multi-class result: the exact product form, the Poisson form over the
// summed expectation, and that total expectation.
struct OccurrenceProbability {
    double exact = 0.0;
    double poisson = 0.0;
    double expectation = 0.0;
};

inline OccurrenceProbability p_at_least_one_classes(std::span<const PlanetClass> classes) {
    if (classes.empty()) {
        throw std::invalid_argument("p_at_least_one_classes: class list is empty");
    }
    double ln_none = 0.0;  // sum of N_i * log(1 - p_i)
    double total = 0.0;
    for (const auto& c : classes) {
        if (!(c.p_life >= 0.0 && c.p_life <= 1.0) || !(c.n_habitable > 0.0)) {
            throw std::domain_error("p_at_least_one_classes: invalid planet class");
        }
        ln_none += (c.p_life == 1.0) ? -std::numeric_limits<double>::infinity()
                                     : c.n_habitable * std::log1p(-c.p_life);
        total += c.n_habitable * c.p_life;
    }
    return {-std::expm1(ln_none), one_minus_exp_neg(total), total};
}

// P(n_obs >= 2 | n_civ, n_obs >= 1) = (1 - (1+n) e^-n) / (1 - e^-n).
// The n -> 0 limit is 0; below the switchover the series n/2 - n^2/12
// avoids the 0/0 cancellation. Approaches 1 from below as n grows.
inline constexpr double kSecondEventSeriesSwitch = 1e-4;

inline double p_second_given_first(double n_civ) {
    if (std::isnan(n_civ) || n_civ < 0.0) {
        throw std::domain_error("p_second_given_first: n_civ must be non-negative");
    }
    if (n_civ == 0.0) return 0.0;
    if (n_civ < kSecondEventSeriesSwitch) {
        return 0.5 * n_civ - n_civ * n_civ / 12.0;
    }
    const double p_any = one_minus_exp_neg(n_civ);
    return (p_any - n_civ * std::exp(-n_civ)) / p_any;
}

// Smallest expectation n not excluded by one observed event at the given
// confidence: n solves P(n_obs >= 1 | n) = 1 - confidence, i.e. -ln(c).
// "Excluded" is the classical frequentist reading: for smaller n, at least
// `confidence` of rerun histories contain no event at all.
inline LimitResult lower_limit(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::domain_error("lower_limit: confidence must lie in (0, 1)");
    }
    return LimitResult{confidence, -std::log(confidence), LimitContext::universe, 1.0};
}

// Root-solve alternative to the closed form, kept public as the self-check
// path (occurrence models without a closed inverse would go through here).
inline double lower_limit_by_bisection(double confidence, double rel_tol = 1e-12) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::domain_error("lower_limit_by_bisection: confidence must lie in (0, 1)");
    }
    const double target = 1.0 - confidence;
    double lo = 0.0;
    double hi = 1.0;
    while (p_at_least_one(hi) < target) hi *= 2.0;
    while (hi - lo > rel_tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (p_at_least_one(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline LimitResult scale_limit_to_galaxy(const LimitResult& limit, double stars_galaxy,
                                         double stars_universe) {
    if (!(stars_galaxy > 0.0 && stars_universe >= stars_galaxy)) {
        throw std::domain_error("scale_limit_to_galaxy: requires stars_universe >= stars_galaxy > 0");
    }
    const double ratio = stars_galaxy / stars_universe;
    return LimitResult{limit.confidence, limit.n_lower * ratio, LimitContext::galaxy,
                       limit.star_ratio * ratio};
}

// Lower bound on the per-habitable-planet probability that a communicating
// civilization arises: lower_limit / N_H.
inline double per_planet_limit(double confidence, double n_habitable) {
    if (!(n_habitable > 0.0)) {
        throw std::domain_error("per_planet_limit: n_habitable must be positive");
    }
    return lower_limit(confidence).n_lower / n_habitable;
}

}  // namespace drakelim
