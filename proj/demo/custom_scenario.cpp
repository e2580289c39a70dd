// Build a scenario in code, run the Monte Carlo engine, and print the
// alone-fractions plus a few quantiles of log10(n_civ).

#include <cstdio>

#include "drakelim/drakelim.hpp"

int main() {
    using namespace drakelim;

    DrakeScenario scenario;
    scenario.factors = {
        {"R_star", PriorSpec::log_uniform(1.0, 100.0), false},
        {"f_p", PriorSpec::log_uniform(0.1, 1.0), true},
        {"n_e", PriorSpec::log_uniform(0.1, 1.0), false},
        {"f_l", PriorSpec::life_rate(PriorSpec::log_normal(1.0, 50.0)), true},
        {"f_i", PriorSpec::log_uniform(0.001, 1.0), true},
        {"f_c", PriorSpec::log_uniform(0.01, 1.0), true},
        {"L", PriorSpec::log_uniform(1e2, 1e10), false},
    };
    scenario.n_samples = 200000;
    scenario.seed = 2026;

    const RunSummary summary = run(scenario, RunOptions{0});  // all cores

    std::printf("%s", fraction_block(summary).c_str());
    std::printf("\nquantiles of log10(n_civ in the galaxy):\n");
    for (const auto& qp : summary.quantiles) {
        std::printf("  q = %-5g  log10 = %s\n", qp.q, format_sig(qp.log10_n_civ).c_str());
    }
    return 0;
}
