#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simarms/runner.hpp"
#include "simarms_app/config.hpp"

namespace simarms::app {

/// Bad preset name, bad flag combination or bad override value.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Command line overrides shared by presets and config runs.
struct Overrides {
  double scale = 1.0;  ///< presets only
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> delta;
  std::optional<std::uint64_t> tau;
};

/// One output curve: a policy on one instance family.
struct Cell {
  std::string name;  ///< CSV file stem
  ExperimentSpec spec;
};

struct Plan {
  std::string label;
  std::vector<Cell> cells;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  LogSchedule log;
  std::vector<std::pair<std::string, std::string>> settings;  ///< echoed into the manifest
};

struct RunReport {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> messages;  ///< human readable summary lines
};

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Full size T = 1e5, K = 1e4, 50 trials; `scale` shrinks all three
/// (T = 1e5 s, K = 1e4 s, trials = clamp(50 s, 20, 50)).
struct ScaledSize {
  std::uint64_t horizon;
  std::size_t num_arms;
  std::size_t trials;
};
ScaledSize scaled_size(double scale);

std::span<const std::string_view> preset_names();

/// Plan of a curve preset (fig2-*, fig3-*, fig4*). Throws UsageError for
/// unknown names and for the report presets.
Plan preset_plan(std::string_view name, const Overrides& overrides);

Plan plan_from_config(const ExperimentConfig& config);

/// Runs every cell, then writes <cell>.csv, final_regrets.csv and
/// manifest.txt into `out`.
RunReport run_plan(const Plan& plan, const std::filesystem::path& out, std::size_t parallel);

RunReport run_preset(std::string_view name, const Overrides& overrides, const std::filesystem::path& out,
                     std::size_t parallel);

/// `out` empty selects the config's own `out` key, then "out".
RunReport run_custom(const std::filesystem::path& config_path, const Overrides& overrides,
                     const std::filesystem::path& out, std::size_t parallel);

/// Brute-force structural suite over `graphs` random similarity graphs.
RunReport run_props_check(std::uint64_t seed, const std::filesystem::path& out, std::size_t graphs = 1000);

/// Bound curves for the stationary and ballooning experiment families.
RunReport run_bounds_report(const Overrides& overrides, const std::filesystem::path& out);

}  // namespace simarms::app
