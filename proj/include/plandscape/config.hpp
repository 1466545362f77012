#pragma once

#include <string>

#include "plandscape/experiments.hpp"

namespace plandscape {

// Stock parameter set used when a key is absent from the config file.
ExperimentConfig baseline_config();

// Parses a flat JSON object of parameter and harness keys. Unknown keys are
// rejected so typos cannot silently fall back to defaults. The per-policy
// key B is an alternative spelling of the budget (B_T = B * N) and the two
// are mutually exclusive. The returned config is fully validated.
ExperimentConfig parse_config(const std::string& text);

// Reads and parses a config file. A missing or unreadable file is an
// IoError; malformed JSON and bad values are ValidationErrors.
ExperimentConfig load_config(const std::string& path);

// Serializes the resolved configuration. Always emits B_T, never B.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace plandscape
