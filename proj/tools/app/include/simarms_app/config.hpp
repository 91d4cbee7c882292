#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simarms/env.hpp"
#include "simarms/policies.hpp"
#include "simarms/runner.hpp"

namespace simarms::app {

/// Which rounds get a CSV row: every round up to `dense_until`, then every
/// `every`-th round, and always the last one.
struct LogSchedule {
  std::uint64_t dense_until = 1000;
  std::uint64_t every = 100;

  std::vector<std::uint64_t> rounds(std::uint64_t horizon) const;
};

/// Flat key = value experiment description.
///
///   setting     stationary | ballooning
///   policies    comma separated policy names
///   T, K        horizon, arm count (K only for stationary)
///   epsilon     similarity threshold
///   reward      bernoulli | gaussian  (noise_sd for gaussian, default 0.5)
///   sampler     uniform | normal | half-triangle | fixed  (means = a,b,...)
///   trials, seed, tau, delta, standardize, out, log_dense_until, log_every
struct ExperimentConfig {
  Setting setting = Setting::Stationary;
  std::vector<PolicyKind> policies;
  std::uint64_t horizon = 0;
  std::size_t num_arms = 0;
  double epsilon = 0.0;
  RewardModel reward = RewardModel::bernoulli();
  MeanSampler sampler = MeanSampler::uniform();
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::uint64_t tau = 0;    ///< 0 selects ceil(sqrt(T))
  double delta = 0.0;       ///< 0 selects 1/T
  bool standardize = false; ///< also run every policy on permuted-means instances
  std::string out;
  LogSchedule log;

  /// Canonical key = value lines, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Syntax problems; every message starts with "line N:".
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Well-formed but inconsistent or incomplete configs; every message starts
/// with the offending key.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Re-checks a config built or modified in code. Throws ValidationError.
void validate(const ExperimentConfig& config);

std::string format_double(double v);

}  // namespace simarms::app
