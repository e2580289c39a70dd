// Headline closed-form numbers: lower limits implied by our own existence,
// and the chance a second civilization shares the observable universe.

#include <cstdio>

#include "drakelim/drakelim.hpp"

int main() {
    using namespace drakelim;

    const LimitResult universe = lower_limit(0.95);
    const LimitResult galaxy =
        scale_limit_to_galaxy(universe, kDefaultStarsGalaxy, kDefaultStarsUniverse);
    std::printf("at 95%% C.L.: n_civ(universe) > %s, n_civ(galaxy) > %s\n",
                format_sig(universe.n_lower).c_str(), format_sig(galaxy.n_lower).c_str());
    std::printf("per-planet limit (N_H = 4e21, 99%% C.L.): f > %s\n",
                format_sig(per_planet_limit(0.99, 4e21)).c_str());

    std::printf("\nP(n_obs >= 1 | n = 1) = %s\n", format_sig(p_at_least_one(1.0)).c_str());
    for (double n : {0.051, 0.5, 1.0, 2.0, 4.0}) {
        std::printf("P(second | first, n = %-5g) = %s\n", n,
                    format_sig(p_second_given_first(n)).c_str());
    }
    return 0;
}
