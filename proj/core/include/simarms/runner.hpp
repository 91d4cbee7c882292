#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simarms/env.hpp"
#include "simarms/policies.hpp"
#include "simarms/simgraph.hpp"

namespace simarms {

/// Cumulative pseudo-regret after each round (entry t-1 covers rounds 1..t).
struct RegretTrace {
  std::vector<double> cumulative;

  double final_regret() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

struct PolicyOptions {
  double delta = 0.0;      ///< 0 selects 1/T
  std::uint64_t tau = 0;   ///< 0 selects ceil(sqrt(T))
};

/// Read-only view handed to per-round hooks.
struct RoundView {
  std::uint64_t round;
  const ObservationBatch& batch;
  const Policy& policy;
  const SimilarityGraph& graph;  ///< ground-truth feedback graph at this round
  double gap;                    ///< pseudo-regret of this round
};

struct TrialHooks {
  std::function<void(const RoundView&)> after_round;
};

/// Runs one trial of T = instance.horizon() rounds. Ballooning instances
/// deliver arm t-1 at round t and grow the graph before the policy acts.
/// Observations follow the instance's structure graph and rewards its means.
/// Deterministic in `seed`. Throws ConfigurationError when the policy's
/// setting does not match the instance.
RegretTrace run_trial(const BanditInstance& instance, PolicyKind policy, std::uint64_t seed,
                      const PolicyOptions& options = {}, const TrialHooks* hooks = nullptr);
RegretTrace run_trial(const BanditInstance& instance, std::string_view policy, std::uint64_t seed,
                      const PolicyOptions& options = {}, const TrialHooks* hooks = nullptr);

/// Freezes the similarity graph of `instance` and reassigns its means to
/// nodes by a uniformly random non-identity permutation. Throws
/// InvalidParameter for a single arm.
BanditInstance standardize_instance(const BanditInstance& instance, std::uint64_t seed);

/// One experiment cell: a policy on freshly sampled instances.
struct ExperimentSpec {
  PolicyKind policy = PolicyKind::UcbN;
  std::uint64_t horizon = 1000;
  std::size_t num_arms = 0;  ///< stationary only
  double epsilon = 0.1;
  RewardModel reward = RewardModel::bernoulli();
  MeanSampler sampler = MeanSampler::uniform();
  bool standardize = false;  ///< stationary only: permuted-means baseline
  PolicyOptions options;

  /// Canonical one-line description, also hashed into the fingerprint.
  std::string describe() const;
};

/// Instance of trial `trial_seed` (means drawn from its Means sub-stream,
/// permutation from its Permutation sub-stream).
BanditInstance make_instance(const ExperimentSpec& spec, std::uint64_t trial_seed);

struct AggregateResult {
  std::vector<double> mean;
  std::vector<double> lower;  ///< mean - 1.96 sd / sqrt(n)
  std::vector<double> upper;
  std::vector<double> final_regrets;
  std::vector<std::uint64_t> seeds;
  std::string fingerprint;

  friend bool operator==(const AggregateResult&, const AggregateResult&) = default;
};

/// Pointwise mean and 95% normal band over traces of equal length.
AggregateResult aggregate(const std::vector<RegretTrace>& traces);

/// Trial i runs with seed derive_seed(root_seed, i). Trials execute on up to
/// `parallelism` threads; the result does not depend on it.
AggregateResult run_batch(const ExperimentSpec& spec, std::size_t n_trials, std::uint64_t root_seed,
                          std::size_t parallelism = 1);

/// Parallel map over trial indices, results in index order.
std::vector<RegretTrace> run_trials(const ExperimentSpec& spec, std::size_t n_trials, std::uint64_t root_seed,
                                    std::size_t parallelism);

/// 64-bit FNV-1a of `text`, hex encoded.
std::string fingerprint_of(std::string_view text);

}  // namespace simarms
