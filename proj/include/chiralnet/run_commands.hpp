#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiralnet/io.hpp"
#include "chiralnet/study.hpp"

namespace chiralnet {

/// Resolved run description: defaults, the config file, then --set
/// overrides, validated against the key registry. The CLI subcommands are
/// thin wrappers over the cmd_* functions below, which makes every output
/// reachable from tests.
struct RunConfig {
    KeyValueConfig cfg;
    std::filesystem::path out_dir = ".";

    static RunConfig load(const std::optional<std::string>& config_path,
                          const std::vector<std::string>& overrides,
                          const std::filesystem::path& out_dir);

    NetworkParams network() const;
    StudyOptions study_options() const;
    std::vector<BoundedParameter> free_parameters() const;
    std::uint64_t seed() const;
    /// Explicit tag, or a UTC timestamp when unset.
    std::string tag() const;
};

struct CommandOutput {
    nlohmann::json summary;
    std::filesystem::path csv_path;
    std::filesystem::path json_path;
};

CommandOutput cmd_simulate(const RunConfig& run);
CommandOutput cmd_optimize(const RunConfig& run);
CommandOutput cmd_table1(const RunConfig& run);
CommandOutput cmd_sweep_distance(const RunConfig& run);
CommandOutput cmd_sweep_chirality(const RunConfig& run);
CommandOutput cmd_sweep_detuning(const RunConfig& run);
CommandOutput cmd_sweep_decay(const RunConfig& run);
CommandOutput cmd_bell_phase(const RunConfig& run);

} // namespace chiralnet
