#pragma once

// Scenario files: a JSON document (schema_version 1) holding a serialized
// DrakeScenario, the confidence levels to report, and output paths. Also
// the small file-I/O helpers shared by the reporting layer and the CLI.
//
// Error contract: unreadable/unwritable files raise IoError (runtime, exit
// code 1 in the CLI); structurally bad or invalid content raises
// std::invalid_argument (validation, exit code 2).

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "drakelim/drake_model.hpp"
#include "drakelim/histogram.hpp"
#include "drakelim/priors.hpp"

namespace drakelim {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file for reading: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failure on file: " + path);
    }
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) {
            throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + path);
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failure on file: " + path);
    }
}

inline constexpr int kScenarioSchemaVersion = 1;

// Requested output paths; an empty path means "not requested".
struct OutputPaths {
    std::string summary;
    std::string histogram;
    std::string curve;
    std::string raw_samples;

    bool operator==(const OutputPaths&) const = default;
};

struct ScenarioFile {
    int schema_version = kScenarioSchemaVersion;
    DrakeScenario scenario;
    std::vector<double> limits;  // confidence levels to report
    OutputPaths outputs;

    bool operator==(const ScenarioFile&) const = default;
};

// ---- JSON serialization ----------------------------------------------------

inline nlohmann::json to_json(const PriorSpec& prior) {
    using nlohmann::json;
    switch (prior.kind()) {
        case PriorKind::log_uniform: {
            const auto& u = prior.as<LogUniform>();
            return json{{"kind", "log_uniform"}, {"lo", u.lo}, {"hi", u.hi}};
        }
        case PriorKind::log_normal: {
            const auto& n = prior.as<LogNormal>();
            return json{{"kind", "log_normal"}, {"mu_ln", n.mu_ln}, {"sigma_ln", n.sigma_ln}};
        }
        case PriorKind::fixed:
            return json{{"kind", "fixed"}, {"value", prior.as<Fixed>().value}};
        case PriorKind::life_rate:
            return json{{"kind", "life_rate"},
                        {"rate_prior", to_json(*prior.as<LifeRate>().rate_prior)}};
    }
    throw std::logic_error("to_json: unhandled prior kind");
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key,
                                           const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw std::invalid_argument(where + ": missing field \"" + key + "\"");
    }
    return *it;
}

inline double require_number(const nlohmann::json& j, const char* key,
                             const std::string& where) {
    const auto& v = require_field(j, key, where);
    if (!v.is_number()) {
        throw std::invalid_argument(where + ": field \"" + key + "\" must be a number");
    }
    return v.get<double>();
}

}  // namespace detail

inline PriorSpec prior_from_json(const nlohmann::json& j, const std::string& where = "prior") {
    if (!j.is_object()) {
        throw std::invalid_argument(where + ": prior must be an object");
    }
    const auto& kind = detail::require_field(j, "kind", where);
    if (!kind.is_string()) {
        throw std::invalid_argument(where + ": \"kind\" must be a string");
    }
    const std::string k = kind.get<std::string>();
    if (k == "log_uniform") {
        return PriorSpec::log_uniform(detail::require_number(j, "lo", where),
                                      detail::require_number(j, "hi", where));
    }
    if (k == "log_normal") {
        return PriorSpec::log_normal(detail::require_number(j, "mu_ln", where),
                                     detail::require_number(j, "sigma_ln", where));
    }
    if (k == "fixed") {
        return PriorSpec::fixed(detail::require_number(j, "value", where));
    }
    if (k == "life_rate") {
        return PriorSpec::life_rate(
            prior_from_json(detail::require_field(j, "rate_prior", where),
                            where + ".rate_prior"));
    }
    throw std::invalid_argument(where + ": unknown prior kind \"" + k + "\"");
}

inline nlohmann::json to_json(const HistogramSpec& spec) {
    return nlohmann::json{{"log10_min", spec.log10_min},
                          {"log10_max", spec.log10_max},
                          {"n_bins", spec.n_bins}};
}

inline HistogramSpec histogram_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("histogram: must be an object");
    }
    HistogramSpec spec;
    spec.log10_min = detail::require_number(j, "log10_min", "histogram");
    spec.log10_max = detail::require_number(j, "log10_max", "histogram");
    const auto& bins = detail::require_field(j, "n_bins", "histogram");
    if (!bins.is_number_integer()) {
        throw std::invalid_argument("histogram: \"n_bins\" must be an integer");
    }
    spec.n_bins = bins.get<std::uint64_t>();
    return spec;
}

inline nlohmann::json to_json(const DrakeScenario& scenario) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : scenario.factors) {
        factors.push_back(nlohmann::json{{"name", f.name},
                                         {"is_fraction", f.is_fraction},
                                         {"prior", to_json(f.prior)}});
    }
    return nlohmann::json{{"factors", std::move(factors)},
                          {"stars_galaxy", scenario.stars_galaxy},
                          {"stars_universe", scenario.stars_universe},
                          {"n_samples", scenario.n_samples},
                          {"seed", scenario.seed},
                          {"histogram", to_json(scenario.histogram)}};
}

inline DrakeScenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("scenario: must be an object");
    }
    DrakeScenario s;
    const auto& factors = detail::require_field(j, "factors", "scenario");
    if (!factors.is_array()) {
        throw std::invalid_argument("scenario: \"factors\" must be an array");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& fj = factors[i];
        const std::string where = "factors[" + std::to_string(i) + "]";
        const auto& name = detail::require_field(fj, "name", where);
        if (!name.is_string()) {
            throw std::invalid_argument(where + ": \"name\" must be a string");
        }
        const auto& frac = detail::require_field(fj, "is_fraction", where);
        if (!frac.is_boolean()) {
            throw std::invalid_argument(where + ": \"is_fraction\" must be a boolean");
        }
        s.factors.push_back(Factor{name.get<std::string>(),
                                   prior_from_json(detail::require_field(fj, "prior", where),
                                                   where + ".prior"),
                                   frac.get<bool>()});
    }
    s.stars_galaxy = detail::require_number(j, "stars_galaxy", "scenario");
    s.stars_universe = detail::require_number(j, "stars_universe", "scenario");
    const auto& n = detail::require_field(j, "n_samples", "scenario");
    if (!n.is_number_integer()) {
        throw std::invalid_argument("scenario: \"n_samples\" must be an integer");
    }
    s.n_samples = n.get<std::uint64_t>();
    const auto& seed = detail::require_field(j, "seed", "scenario");
    if (!seed.is_number_integer()) {
        throw std::invalid_argument("scenario: \"seed\" must be an integer");
    }
    s.seed = seed.get<std::uint64_t>();
    if (auto it = j.find("histogram"); it != j.end()) {
        s.histogram = histogram_spec_from_json(*it);
    }
    return s;
}

inline nlohmann::json to_json(const ScenarioFile& file) {
    return nlohmann::json{{"schema_version", file.schema_version},
                          {"scenario", to_json(file.scenario)},
                          {"limits", file.limits},
                          {"outputs",
                           {{"summary", file.outputs.summary},
                            {"histogram", file.outputs.histogram},
                            {"curve", file.outputs.curve},
                            {"raw_samples", file.outputs.raw_samples}}}};
}

inline ScenarioFile scenario_file_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("scenario file: top level must be an object");
    }
    ScenarioFile file;
    const auto& ver = detail::require_field(j, "schema_version", "scenario file");
    if (!ver.is_number_integer()) {
        throw std::invalid_argument("scenario file: \"schema_version\" must be an integer");
    }
    file.schema_version = ver.get<int>();
    if (file.schema_version != kScenarioSchemaVersion) {
        throw std::invalid_argument("scenario file: unsupported schema_version " +
                                    std::to_string(file.schema_version) + " (supported: " +
                                    std::to_string(kScenarioSchemaVersion) + ")");
    }
    file.scenario = scenario_from_json(detail::require_field(j, "scenario", "scenario file"));
    if (auto it = j.find("limits"); it != j.end()) {
        if (!it->is_array()) {
            throw std::invalid_argument("scenario file: \"limits\" must be an array");
        }
        for (const auto& c : *it) {
            if (!c.is_number()) {
                throw std::invalid_argument("scenario file: limits entries must be numbers");
            }
            file.limits.push_back(c.get<double>());
        }
    }
    if (auto it = j.find("outputs"); it != j.end()) {
        if (!it->is_object()) {
            throw std::invalid_argument("scenario file: \"outputs\" must be an object");
        }
        auto path_of = [&](const char* key) -> std::string {
            auto pit = it->find(key);
            if (pit == it->end()) return {};
            if (!pit->is_string()) {
                throw std::invalid_argument(std::string("scenario file: outputs.") + key +
                                            " must be a string");
            }
            return pit->get<std::string>();
        };
        file.outputs.summary = path_of("summary");
        file.outputs.histogram = path_of("histogram");
        file.outputs.curve = path_of("curve");
        file.outputs.raw_samples = path_of("raw_samples");
    }
    return file;
}

// Parse + full validation. The path appears in every error message.
inline ScenarioFile load_scenario_file(const std::string& path) {
    const std::string text = read_text_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": not valid JSON: " + e.what());
    }
    ScenarioFile file;
    try {
        file = scenario_file_from_json(j);
        validate_or_throw(file.scenario);
        for (double c : file.limits) {
            if (!(c > 0.0 && c < 1.0)) {
                throw std::invalid_argument("limits: confidence levels must lie in (0, 1)");
            }
        }
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return file;
}

}  // namespace drakelim
