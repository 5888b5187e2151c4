#pragma once

#include "supercrit/config.hpp"
#include "supercrit/multiplier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace supercrit {

struct ScenarioResult {
    int exit_code = 0;  // 0 ok, 2 config error, 3 runtime blow-up, 4 expectation failed
    std::string output_dir;
    std::string report_json;  // also written to <output_dir>/report.json
};

struct ScenarioOverrides {
    std::optional<std::string> output;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
};

/// Names of the scenarios compiled into the binary (from configs/*.cfg).
std::vector<std::string> bundled_scenario_names();
/// Raw text of a bundled scenario; throws ConfigError if unknown.
std::string bundled_scenario_text(const std::string& name);

/// Loads a config from a path, or from the bundled set when the argument
/// matches a bundled scenario name.
Config load_scenario_config(const std::string& path_or_name);

/// Schema and invariant checks only; throws ConfigError on any problem.
void validate_scenario(const std::string& path_or_name);

/// Executes the scenario and writes the reproducibility bundle (resolved
/// config, CSVs, snapshots, report.json) into the output directory.
ScenarioResult run_scenario(const std::string& path_or_name, const ScenarioOverrides& overrides = {});

/// Multiplier from the multiplier.* keys of a config.
Multiplier multiplier_from_config(Config& cfg);

}  // namespace supercrit
