// drakelim: Poisson counting statistics for Drake-equation ensembles.
//
// Subcommands:
//   limit   closed-form lower limits implied by one observed civilization
//   prob    occurrence / second-civilization probabilities
//   sample  Monte Carlo run driven by a JSON scenario file
//   curve   P(second | first) as a function of the expected count
//
// Exit codes: 0 success, 1 runtime/I/O failure, 2 usage or validation error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drakelim/drakelim.hpp"

namespace {

using namespace drakelim;

int cmd_limit(double confidence, double stars_galaxy, double stars_universe,
              bool has_habitable, double n_habitable) {
    const LimitResult universe = lower_limit(confidence);
    const LimitResult galaxy = scale_limit_to_galaxy(universe, stars_galaxy, stars_universe);
    std::cout << "lower limits at " << format_sig(confidence * 100.0) << "% C.L.\n";
    std::cout << "  n_civ (observable universe) > " << format_sig(universe.n_lower) << "\n";
    std::cout << "  n_civ (galaxy)              > " << format_sig(galaxy.n_lower) << "\n";
    if (has_habitable) {
        std::cout << "  per-planet probability      > "
                  << format_sig(per_planet_limit(confidence, n_habitable)) << "\n";
    }
    return 0;
}

int cmd_prob(double n_civ, bool given_one) {
    if (given_one) {
        std::cout << "P(n_obs >= 2 | n = " << format_sig(n_civ) << ", n_obs >= 1): "
                  << format_sig(p_second_given_first(n_civ)) << "\n";
    } else {
        std::cout << "P(n_obs >= 1 | n = " << format_sig(n_civ) << "): "
                  << format_sig(p_at_least_one(n_civ)) << "\n";
    }
    return 0;
}

int cmd_sample(const std::string& path, unsigned n_threads) {
    const ScenarioFile file = load_scenario_file(path);
    const RunResult result = run_with_samples(file.scenario, RunOptions{n_threads});

    std::vector<LimitResult> limits;
    for (double confidence : file.limits) {
        const LimitResult universe = lower_limit(confidence);
        limits.push_back(universe);
        limits.push_back(scale_limit_to_galaxy(universe, file.scenario.stars_galaxy,
                                               file.scenario.stars_universe));
    }

    if (!file.outputs.summary.empty()) {
        write_text_file(file.outputs.summary,
                        emit_summary(result.summary, limits, file.scenario,
                                     utc_timestamp_now()));
        std::cerr << "wrote summary: " << file.outputs.summary << "\n";
    }
    if (!file.outputs.histogram.empty()) {
        write_text_file(file.outputs.histogram, histogram_csv(result.summary));
        std::cerr << "wrote histogram: " << file.outputs.histogram << "\n";
    }
    if (!file.outputs.curve.empty()) {
        const auto points = emit_curve(kCurveDefaultMin, kCurveDefaultMax, kCurveDefaultPoints,
                                       CurveSpacing::log);
        write_text_file(file.outputs.curve, curve_csv(points));
        std::cerr << "wrote curve: " << file.outputs.curve << "\n";
    }
    if (!file.outputs.raw_samples.empty()) {
        write_text_file(file.outputs.raw_samples, raw_samples_text(result.log10_samples));
        std::cerr << "wrote raw samples: " << file.outputs.raw_samples << "\n";
    }

    std::cout << fraction_block(result.summary);
    return 0;
}

int cmd_curve(double n_min, double n_max, std::uint64_t n_points, const std::string& spacing,
              const std::string& output, bool paper_points) {
    if (paper_points) {
        static constexpr double grid[] = {0.051, 0.5, 1.0, 2.0, 4.0};
        const auto points = evaluate_curve(grid);
        std::cout << "n_civ  p_second_given_first\n";
        for (const auto& p : points) {
            std::cout << format_sig(p.n_civ) << "  " << format_sig(p.p_second) << "\n";
        }
        return 0;
    }
    const auto points = emit_curve(n_min, n_max, n_points, curve_spacing_from_name(spacing));
    write_text_file(output, curve_csv(points));
    std::cerr << "wrote curve: " << output << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson counting statistics for Drake-equation ensembles"};
    app.set_version_flag("--version", drakelim::kVersion);
    app.require_subcommand(1);

    double confidence = 0.95;
    double stars_galaxy = drakelim::kDefaultStarsGalaxy;
    double stars_universe = drakelim::kDefaultStarsUniverse;
    double n_habitable = 0.0;
    auto* limit_cmd = app.add_subcommand(
        "limit", "Lower limits on the expected civilization count implied by one observation");
    limit_cmd->add_option("--confidence", confidence, "Confidence level, in (0, 1)")
        ->capture_default_str();
    limit_cmd->add_option("--stars-galaxy", stars_galaxy, "Stars in the galaxy")
        ->capture_default_str();
    limit_cmd->add_option("--stars-universe", stars_universe, "Stars in the observable universe")
        ->capture_default_str();
    auto* habitable_opt = limit_cmd->add_option(
        "--habitable", n_habitable, "Habitable planet count for the per-planet limit");

    double prob_n = 0.0;
    bool given_one = false;
    auto* prob_cmd =
        app.add_subcommand("prob", "Occurrence probabilities for an expected count n");
    prob_cmd->add_option("--n", prob_n, "Expected number of civilizations")->required();
    prob_cmd->add_flag("--given-one", given_one,
                       "Condition on at least one civilization having been observed");

    std::string scenario_path;
    unsigned n_threads = 1;
    auto* sample_cmd =
        app.add_subcommand("sample", "Monte Carlo run driven by a JSON scenario file");
    sample_cmd->add_option("scenario", scenario_path, "Path to the scenario file")->required();
    sample_cmd->add_option("--threads", n_threads, "Worker threads (0 = hardware concurrency)")
        ->capture_default_str();

    double curve_min = drakelim::kCurveDefaultMin;
    double curve_max = drakelim::kCurveDefaultMax;
    std::uint64_t curve_points = drakelim::kCurveDefaultPoints;
    std::string curve_spacing = "log";
    std::string curve_output = "curve.csv";
    bool paper_points = false;
    auto* curve_cmd = app.add_subcommand(
        "curve", "P(second civilization | first observed) over a grid of expected counts");
    curve_cmd->add_option("--min", curve_min, "Grid minimum")->capture_default_str();
    curve_cmd->add_option("--max", curve_max, "Grid maximum")->capture_default_str();
    curve_cmd->add_option("--points", curve_points, "Number of grid points")
        ->capture_default_str();
    curve_cmd->add_option("--spacing", curve_spacing, "Grid spacing: linear or log")
        ->capture_default_str();
    curve_cmd->add_option("--output", curve_output, "Output CSV path")->capture_default_str();
    curve_cmd->add_flag("--paper-points", paper_points,
                        "Print the canonical five-point reference grid instead of writing a CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    }

    try {
        if (app.got_subcommand(limit_cmd)) {
            return cmd_limit(confidence, stars_galaxy, stars_universe,
                             habitable_opt->count() > 0, n_habitable);
        }
        if (app.got_subcommand(prob_cmd)) {
            return cmd_prob(prob_n, given_one);
        }
        if (app.got_subcommand(sample_cmd)) {
            return cmd_sample(scenario_path, n_threads);
        }
        if (app.got_subcommand(curve_cmd)) {
            return cmd_curve(curve_min, curve_max, curve_points, curve_spacing, curve_output,
                             paper_points);
        }
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const drakelim::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
