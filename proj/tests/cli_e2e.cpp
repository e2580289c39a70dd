// End-to-end exercises of the command-line tool as a black box: spawn the
// binary, parse its text output, and check exit codes. No library linkage so
// this catches packaging mistakes the unit tests cannot.
//
// Usage: cli_e2e <path-to-cli> <path-to-table1-scenario>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "proc.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_scenario;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Summary files embed a wall-clock timestamp; drop that line before diffing.
std::string without_timestamp(const std::string& text) {
    std::string out;
    for (const auto& line : split_lines(text)) {
        if (line.find("generated_at") != std::string::npos) continue;
        out += line;
        out += '\n';
    }
    return out;
}

bool close_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::fabs(b);
}

void check_limit(CheckSet& t) {
    const auto r = run_cmd(shell_quote(g_cli) + " limit --confidence 0.95");
    t.expect(r.exit_code == 0, "limit exits 0, got " + std::to_string(r.exit_code));
    t.expect(find_line(r.output, "95% C.L.") != "", "header states the confidence level");

    const std::string universe = find_line(r.output, "observable universe");
    const std::string galaxy = find_line(r.output, "n_civ (galaxy)");
    t.expect(!universe.empty() && !galaxy.empty(), "both limit lines present");
    t.expect(close_abs(last_double(universe), 0.05129329438755058, 1e-6),
             "universe limit = -ln(0.95), got " + universe);
    t.expect(close_abs(last_double(galaxy), 7.693994158132586e-13, 1e-16),
             "galaxy limit scaled by the star ratio, got " + galaxy);
    t.expect(find_line(r.output, "per-planet") == "",
             "no per-planet line without --habitable");
    t.report("limit: default 95% closed forms");

    const auto r99 = run_cmd(shell_quote(g_cli) +
                             " limit --confidence 0.99 --habitable 4e21");
    t.expect(r99.exit_code == 0, "limit --habitable exits 0");
    const std::string uni99 = find_line(r99.output, "observable universe");
    const std::string planet = find_line(r99.output, "per-planet");
    t.expect(close_rel(last_double(uni99), 0.01005033585350145, 1e-5),
             "universe limit = -ln(0.99), got " + uni99);
    t.expect(close_rel(last_double(planet), 2.5125839633753628e-24, 1e-5),
             "per-planet limit at 4e21 planets, got " + planet);
    t.report("limit: 99% with per-planet probability");
}

void check_prob(CheckSet& t) {
    const auto r1 = run_cmd(shell_quote(g_cli) + " prob --n 1");
    t.expect(r1.exit_code == 0, "prob exits 0");
    t.expect(r1.output.find("P(n_obs >= 1 | n = 1)") != std::string::npos,
             "states the queried probability, got: " + r1.output);
    t.expect(close_abs(last_double(find_line(r1.output, "P(")), 0.6321205588285577, 1e-6),
             "P(>=1 | n=1) = 1 - 1/e");

    const auto r2 = run_cmd(shell_quote(g_cli) + " prob --n 1 --given-one");
    t.expect(r2.output.find("n_obs >= 2") != std::string::npos &&
                 r2.output.find("n_obs >= 1") != std::string::npos,
             "conditional form names both events");
    t.expect(close_abs(last_double(find_line(r2.output, "P(")), 0.41802329313067355, 1e-6),
             "P(>=2 | n=1, >=1)");

    const auto r0 = run_cmd(shell_quote(g_cli) + " prob --n 0 --given-one");
    t.expect(last_double(find_line(r0.output, "P(")) == 0.0, "conditional at n=0 is 0");
    t.report("prob: occurrence and conditional probabilities");
}

void check_curve_csv(CheckSet& t) {
    fs::create_directories("curve_work");
    const auto r = run_cmd("cd curve_work && " + shell_quote(g_cli) + " curve");
    t.expect(r.exit_code == 0, "curve exits 0");
    t.expect(fs::exists("curve_work/curve.csv"), "writes curve.csv by default");

    const auto lines = split_lines(read_file("curve_work/curve.csv"));
    t.expect(lines.size() == 102, "header + 101 points, got " +
                                      std::to_string(lines.size()) + " lines");
    t.expect(lines.at(0) == "n_civ,p_second_given_first", "exact CSV header");
    t.expect(lines.at(1).rfind("0.001,", 0) == 0, "grid starts at 1e-3: " + lines.at(1));
    t.expect(lines.back().rfind("100,", 0) == 0, "grid ends at 1e2: " + lines.back());

    // p saturates to 1.0 in double precision near the top of the default
    // grid, so demand strict increase in n but only monotone p in (0, 1].
    double prev_n = 0.0;
    double prev_p = -1.0;
    bool monotone = true;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string row = lines[i];
        for (auto& c : row) {
            if (c == ',') c = ' ';
        }
        const auto vals = all_doubles(row);
        if (vals.size() != 2 || vals[0] <= prev_n || vals[1] < prev_p ||
            vals[1] <= 0.0 || vals[1] > 1.0) {
            monotone = false;
            break;
        }
        prev_n = vals[0];
        prev_p = vals[1];
    }
    t.expect(monotone, "rows strictly increasing in n, monotone p in (0, 1]");
    t.report("curve: default log-spaced CSV");
}

void check_curve_paper_points(CheckSet& t) {
    const auto r = run_cmd(shell_quote(g_cli) + " curve --paper-points");
    t.expect(r.exit_code == 0, "curve --paper-points exits 0");
    const auto lines = split_lines(r.output);
    t.expect(lines.size() == 6 && lines.at(0) == "n_civ  p_second_given_first",
             "header plus five rows");

    static constexpr double kGrid[] = {0.051, 0.5, 1.0, 2.0, 4.0};
    static constexpr double kExpect[] = {0.0252833, 0.229253, 0.418023, 0.686965, 0.925371};
    bool rows_ok = lines.size() == 6;
    for (std::size_t i = 0; rows_ok && i < 5; ++i) {
        const auto vals = all_doubles(lines.at(i + 1));
        rows_ok = vals.size() == 2 && close_abs(vals[0], kGrid[i], 1e-9) &&
                  close_abs(vals[1], kExpect[i], 1e-6);
    }
    t.expect(rows_ok, "reference grid values match to printed precision");
    t.report("curve: --paper-points reference table");
}

void check_sample_determinism(CheckSet& t) {
    for (const char* dir : {"run_a", "run_b", "run_c"}) fs::create_directories(dir);

    const std::string base = shell_quote(g_cli) + " sample " + shell_quote(g_scenario);
    const auto ra = run_cmd("cd run_a && " + base);
    const auto rb = run_cmd("cd run_b && " + base + " --threads 4");
    const auto rc = run_cmd("cd run_c && " + base + " --threads 1");
    t.expect(ra.exit_code == 0 && rb.exit_code == 0 && rc.exit_code == 0,
             "all sample runs exit 0");

    const fs::path summary = "out/table1_summary.json";
    const fs::path histogram = "out/table1_histogram.csv";
    const fs::path curve = "out/table1_curve.csv";
    for (const char* dir : {"run_a", "run_b", "run_c"}) {
        t.expect(fs::exists(fs::path(dir) / summary) &&
                     fs::exists(fs::path(dir) / histogram) &&
                     fs::exists(fs::path(dir) / curve),
                 std::string("outputs written under ") + dir);
    }
    t.report("sample: runs complete and write requested outputs");

    const std::string sum_a = without_timestamp(read_file(fs::path("run_a") / summary));
    const std::string sum_b = without_timestamp(read_file(fs::path("run_b") / summary));
    const std::string sum_c = without_timestamp(read_file(fs::path("run_c") / summary));
    t.expect(sum_a == sum_b, "summary identical for 1 vs 4 threads (minus timestamp)");
    t.expect(sum_a == sum_c, "summary identical across repeated runs (minus timestamp)");
    t.expect(read_file(fs::path("run_a") / histogram) ==
                 read_file(fs::path("run_b") / histogram),
             "histogram CSV byte-identical across thread counts");
    t.expect(ra.output.find("full distribution") != std::string::npos,
             "stdout carries the fraction table");
    const std::string frac_a = find_line(ra.output, "full distribution");
    t.expect(frac_a == find_line(rb.output, "full distribution"),
             "printed fractions identical across thread counts");

    const auto fracs = all_doubles(frac_a);
    t.expect(fracs.size() == 2, "two fractions on the full-distribution row");
    if (fracs.size() == 2) {
        t.expect(fracs[0] > fracs[1], "alone-in-galaxy exceeds alone-in-universe");
        t.expect(fracs[0] > 0.3 && fracs[0] < 0.7, "galaxy fraction is plausible");
    }
    t.report("sample: bit-level determinism across threads and reruns");
}

void check_errors(CheckSet& t) {
    const auto bad_conf = run_cmd(shell_quote(g_cli) + " limit --confidence 1.5");
    t.expect(bad_conf.exit_code == 2,
             "confidence outside (0,1) exits 2, got " + std::to_string(bad_conf.exit_code));
    t.expect(bad_conf.output.find("confidence") != std::string::npos,
             "error names the offending parameter");

    t.expect(run_cmd(shell_quote(g_cli) + " prob").exit_code == 2, "missing --n exits 2");
    t.expect(run_cmd(shell_quote(g_cli)).exit_code == 2, "no subcommand exits 2");
    t.expect(run_cmd(shell_quote(g_cli) + " limit --bogus").exit_code == 2,
             "unknown flag exits 2");
    t.expect(run_cmd(shell_quote(g_cli) + " curve --min 0 --spacing log").exit_code == 2,
             "log spacing from 0 exits 2");
    t.expect(run_cmd(shell_quote(g_cli) + " curve --spacing diagonal").exit_code == 2,
             "unknown spacing exits 2");
    t.report("errors: usage and validation failures exit 2");

    const auto missing = run_cmd(shell_quote(g_cli) + " sample no_such_file.scenario");
    t.expect(missing.exit_code == 1,
             "unreadable scenario exits 1, got " + std::to_string(missing.exit_code));
    t.expect(missing.output.find("no_such_file.scenario") != std::string::npos,
             "error names the path");

    {
        std::ofstream out("empty_factors.scenario");
        out << "{\"schema_version\":1,\"scenario\":{\"name\":\"x\",\"factors\":[],"
               "\"stars_galaxy\":3e11,\"stars_universe\":2e22,"
               "\"n_samples\":10,\"seed\":1},\"limits\":[0.95],\"outputs\":{}}";
    }
    const auto invalid = run_cmd(shell_quote(g_cli) + " sample empty_factors.scenario");
    t.expect(invalid.exit_code == 2,
             "scenario failing validation exits 2, got " + std::to_string(invalid.exit_code));
    t.expect(invalid.output.find("empty_factors.scenario") != std::string::npos,
             "validation error names the file");
    t.report("errors: I/O failures exit 1, bad scenarios exit 2");

    const auto version = run_cmd(shell_quote(g_cli) + " --version");
    t.expect(version.exit_code == 0 &&
                 version.output.find("1.0.0") != std::string::npos,
             "--version prints the version and exits 0");
    const auto help = run_cmd(shell_quote(g_cli) + " --help");
    t.expect(help.exit_code == 0 && help.output.find("limit") != std::string::npos &&
                 help.output.find("sample") != std::string::npos,
             "--help lists the subcommands and exits 0");
    t.report("errors: help and version exit 0");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: cli_e2e <cli-binary> <table1-scenario>\n");
        return 64;
    }
    // Several checks run the tool from subdirectories; keep paths valid there.
    g_cli = fs::absolute(argv[1]).string();
    g_scenario = fs::absolute(argv[2]).string();

    CheckSet t;
    try {
        check_limit(t);
        check_prob(t);
        check_curve_csv(t);
        check_curve_paper_points(t);
        check_sample_determinism(t);
        check_errors(t);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fatal: %s\n", e.what());
        return 70;
    }
    return t.total_failures();
}
