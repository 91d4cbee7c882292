#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "simarms/errors.hpp"
#include "simarms_app/config.hpp"
#include "simarms_app/experiments.hpp"
#include "simarms_app/output.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kValidationFailure = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace simarms::app;

  CLI::App app{"Bandit experiments on similarity feedback graphs"};
  app.set_version_flag("--version", std::string(version_string()));

  std::string preset;
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double scale = 1.0;
  std::size_t parallel = 1;
  double delta = 0.0;
  std::uint64_t tau = 0;

  std::string preset_help = "run a preset:";
  for (auto name : preset_names()) preset_help += " " + std::string(name);
  auto* preset_opt = app.add_option("--preset", preset, preset_help);
  auto* config_opt = app.add_option("--config", config, "run the experiment described by a key = value file");
  preset_opt->excludes(config_opt);
  app.add_option("--out", out, "output directory (default: out, or the config's out key)");
  auto* seed_opt = app.add_option("--seed", seed, "root seed");
  auto* trials_opt = app.add_option("--trials", trials, "number of trials (Monte-Carlo streams for bounds-report)");
  app.add_option("--scale", scale, "preset size factor: T = 1e5 s, K = 1e4 s")->check(CLI::PositiveNumber);
  app.add_option("--parallel", parallel, "worker threads; results do not depend on it")->check(CLI::Range(1u, 1024u));
  auto* delta_opt = app.add_option("--delta", delta, "confidence parameter (default 1/T)");
  auto* tau_opt = app.add_option("--tau", tau, "refresh period of the U- policies (default ceil(sqrt(T)))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }
  if (preset.empty() && config.empty()) {
    std::cerr << "one of --preset or --config is required\n" << app.help();
    return kValidationFailure;
  }

  Overrides overrides;
  overrides.scale = scale;
  if (*seed_opt) overrides.seed = seed;
  if (*trials_opt) overrides.trials = trials;
  if (*delta_opt) overrides.delta = delta;
  if (*tau_opt) overrides.tau = tau;

  try {
    const RunReport report = !preset.empty() ? run_preset(preset, overrides, out.empty() ? "out" : out, parallel)
                                             : run_custom(config, overrides, out, parallel);
    for (const auto& line : report.messages) std::cout << line << '\n';
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kValidationFailure;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kValidationFailure;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const simarms::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}
