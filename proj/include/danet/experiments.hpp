#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace danet {

/// Command-line overrides that win over the config file.
struct CommonOverrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
};

/// Loads and merges the configuration, runs the named command, and writes
/// manifest.json into the output directory whether the run succeeds or not.
/// The manifest echoes the fully defaulted config, so it can be fed back via
/// --config to reproduce the run. Returns the process exit code:
/// 0 ok, 2 I/O or configuration, 3 capacity, 4 runtime failure.
int run_experiment(const std::string& command, const CommonOverrides& cli);

}  // namespace danet
