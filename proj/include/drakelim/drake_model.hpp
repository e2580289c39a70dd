#pragma once

// The Drake product itself: an ordered list of factor priors multiplied into
// n_civ per draw, plus the star-count rescaling between Galaxy and
// observable universe and the grouped N_H * p_L expectation form.

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "drakelim/histogram.hpp"
#include "drakelim/math.hpp"
#include "drakelim/priors.hpp"

namespace drakelim {

inline constexpr double kDefaultStarsGalaxy = 3e11;
inline constexpr double kDefaultStarsUniverse = 2e22;

struct Factor {
    std::string name;
    PriorSpec prior;
    bool is_fraction = false;

    bool operator==(const Factor&) const = default;
};

// The full experiment definition: factor priors, star counts and run
// configuration. Star counts are fields, not constants, so limited star
// groups (clusters, alternate galaxy counts) are a scenario edit.
struct DrakeScenario {
    std::vector<Factor> factors;
    double stars_galaxy = kDefaultStarsGalaxy;
    double stars_universe = kDefaultStarsUniverse;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    HistogramSpec histogram;

    double star_ratio() const { return stars_universe / stars_galaxy; }

    bool operator==(const DrakeScenario&) const = default;
};

// Grouped form: n_civ = N_H * p_L.
struct ExpectationModel {
    double n_habitable = 1.0;
    double p_life = 0.0;
};

inline std::vector<std::string> validate(const DrakeScenario& s) {
    std::vector<std::string> bad;
    if (s.factors.empty()) {
        bad.push_back("factors: at least one factor is required");
    }
    std::set<std::string> seen;
    for (const auto& f : s.factors) {
        if (!seen.insert(f.name).second) {
            bad.push_back("factors: duplicate name '" + f.name + "'");
        }
        for (const auto& msg : validate(f.prior)) {
            bad.push_back("factor '" + f.name + "': " + msg);
        }
        if (f.is_fraction && is_valid(f.prior)) {
            const Interval sup = support(f.prior);
            if (!(sup.lo >= 0.0 && sup.hi <= 1.0)) {
                bad.push_back("factor '" + f.name +
                              "': flagged as fraction but prior support is not within [0, 1]");
            }
        }
    }
    if (!(std::isfinite(s.stars_galaxy) && s.stars_galaxy > 0.0)) {
        bad.push_back("stars_galaxy: must be a finite positive count");
    }
    if (!(std::isfinite(s.stars_universe) && s.stars_universe >= s.stars_galaxy)) {
        bad.push_back("stars_universe: must satisfy stars_universe >= stars_galaxy");
    }
    if (s.n_samples < 1) {
        bad.push_back("n_samples: must be >= 1");
    }
    for (const auto& msg : validate(s.histogram)) {
        bad.push_back(msg);
    }
    return bad;
}

inline void validate_or_throw(const DrakeScenario& s) {
    const auto bad = validate(s);
    if (bad.empty()) return;
    std::string msg = "scenario: invalid specification";
    for (const auto& b : bad) msg += "\n  - " + b;
    throw std::invalid_argument(msg);
}

inline std::vector<std::string> validate(const ExpectationModel& m) {
    std::vector<std::string> bad;
    if (!(std::isfinite(m.n_habitable) && m.n_habitable > 0.0)) {
        bad.push_back("n_habitable: must be a finite positive count");
    }
    if (!(m.p_life >= 0.0 && m.p_life <= 1.0)) {
        bad.push_back("p_life: must lie in [0, 1]");
    }
    return bad;
}

inline bool is_valid(const DrakeScenario& s) { return validate(s).empty(); }
inline bool is_valid(const ExpectationModel& m) { return validate(m).empty(); }

// One joint draw of n_civ for the Galaxy: factor draws are multiplied as a
// sum of natural logs, so products reaching past 1e-300 keep full precision.
// A zero factor draw gives ln = -inf, a defined zero product.
template <typename URBG>
LogScalar draw_n_civ(const DrakeScenario& scenario, URBG& rng) {
    double ln_product = 0.0;
    for (const auto& f : scenario.factors) {
        ln_product += std::log(sample(f.prior, rng));
    }
    return LogScalar::from_ln(ln_product);
}

// n_o = n_g * (stars_universe / stars_galaxy).
inline double scale_to_universe(double n_g, const DrakeScenario& scenario) {
    if (std::isnan(n_g) || n_g < 0.0) {
        throw std::domain_error("scale_to_universe: n_g must be non-negative");
    }
    return n_g * scenario.star_ratio();
}

inline LogScalar scale_to_universe(LogScalar n_g, const DrakeScenario& scenario) {
    return LogScalar::from_ln(n_g.ln() + std::log(scenario.star_ratio()));
}

inline double expectation(const ExpectationModel& model) {
    return model.n_habitable * model.p_life;
}

}  // namespace drakelim
