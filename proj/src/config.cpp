#include "plandscape/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plandscape/errors.hpp"

namespace plandscape {
namespace {

using nlohmann::json;

int as_int(const json& value, const std::string& key) {
    if (!value.is_number_integer()) {
        throw ValidationError("config: key \"" + key + "\" must be an integer");
    }
    return value.get<int>();
}

double as_double(const json& value, const std::string& key) {
    if (!value.is_number()) {
        throw ValidationError("config: key \"" + key + "\" must be a number");
    }
    return value.get<double>();
}

std::uint64_t as_u64(const json& value, const std::string& key) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        throw ValidationError("config: key \"" + key + "\" must be a nonnegative integer");
    }
    return value.get<std::uint64_t>();
}

bool as_bool(const json& value, const std::string& key) {
    if (!value.is_boolean()) {
        throw ValidationError("config: key \"" + key + "\" must be a boolean");
    }
    return value.get<bool>();
}

}  // namespace

ExperimentConfig baseline_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("config: top level must be a JSON object");
    }

    ExperimentConfig cfg = baseline_config();
    bool has_total = false;
    bool has_per_policy = false;
    double per_policy = 0.0;
    for (const auto& [key, value] : doc.items()) {
        if (key == "N") {
            cfg.network.n_policies = as_int(value, key);
        } else if (key == "M") {
            cfg.network.n_targets = as_int(value, key);
        } else if (key == "A") {
            cfg.budget.alphabet = as_int(value, key);
        } else if (key == "B_T") {
            cfg.budget.total_budget = as_double(value, key);
            has_total = true;
        } else if (key == "B") {
            per_policy = as_double(value, key);
            has_per_policy = true;
        } else if (key == "mu_k") {
            cfg.network.mu_k = as_double(value, key);
        } else if (key == "beta_k") {
            cfg.network.beta_k = as_double(value, key);
        } else if (key == "mu_c") {
            cfg.network.mu_c = as_double(value, key);
        } else if (key == "beta_c") {
            cfg.network.beta_c = as_double(value, key);
        } else if (key == "mu_w") {
            cfg.weights.mu_w = as_double(value, key);
        } else if (key == "beta_w") {
            cfg.weights.beta_w = as_double(value, key);
        } else if (key == "eta") {
            cfg.params.eta = as_double(value, key);
        } else if (key == "n_sims") {
            cfg.n_sims = as_int(value, key);
        } else if (key == "base_seed") {
            cfg.base_seed = as_u64(value, key);
        } else if (key == "max_steps") {
            cfg.max_steps = as_int(value, key);
        } else if (key == "workers") {
            cfg.workers = as_int(value, key);
        } else if (key == "fix_weights") {
            cfg.fix_weights = as_bool(value, key);
        } else {
            throw ValidationError("config: unknown key \"" + key + "\"");
        }
    }
    if (has_total && has_per_policy) {
        throw ValidationError("config: B and B_T are mutually exclusive");
    }
    if (has_per_policy) {
        cfg.budget.total_budget =
            per_policy * static_cast<double>(cfg.network.n_policies);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read config file: " + path);
    }
    return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config) {
    nlohmann::ordered_json doc;
    doc["N"] = config.network.n_policies;
    doc["M"] = config.network.n_targets;
    doc["A"] = config.budget.alphabet;
    doc["B_T"] = config.budget.total_budget;
    doc["mu_k"] = config.network.mu_k;
    doc["beta_k"] = config.network.beta_k;
    doc["mu_c"] = config.network.mu_c;
    doc["beta_c"] = config.network.beta_c;
    doc["mu_w"] = config.weights.mu_w;
    doc["beta_w"] = config.weights.beta_w;
    doc["eta"] = config.params.eta;
    doc["n_sims"] = config.n_sims;
    doc["base_seed"] = config.base_seed;
    doc["max_steps"] = config.max_steps;
    doc["workers"] = config.workers;
    doc["fix_weights"] = config.fix_weights;
    return doc.dump(2) + "\n";
}

}  // namespace plandscape
