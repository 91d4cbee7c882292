#include "simarms/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "simarms/errors.hpp"
#include "simarms/rng.hpp"

namespace simarms {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

RegretTrace run_trial(const BanditInstance& instance, PolicyKind kind, std::uint64_t seed,
                      const PolicyOptions& options, const TrialHooks* hooks) {
  if (setting_of(kind) != instance.setting()) {
    throw ConfigurationError(std::string(to_string(kind)) + " cannot run in the " +
                             (instance.setting() == Setting::Stationary ? "stationary" : "ballooning") +
                             " setting");
  }
  const bool ballooning = instance.setting() == Setting::Ballooning;
  const std::uint64_t horizon = instance.horizon();
  const auto& means = instance.means();
  const auto& structure = instance.structure_means();

  SimilarityGraph graph = ballooning ? SimilarityGraph(instance.epsilon())
                                     : SimilarityGraph::build(structure, instance.epsilon());
  PolicyContext ctx;
  ctx.num_arms = ballooning ? 0 : instance.num_arms();
  ctx.horizon = horizon;
  ctx.delta = options.delta;
  ctx.tau = options.tau;
  ctx.graph = &graph;
  auto policy = make_policy(kind, ctx);

  RewardStream rewards(derive_stream(seed, StreamTag::Rewards));
  double best = ballooning ? -kInf : *std::max_element(means.begin(), means.end());
  std::size_t available = ballooning ? 0 : instance.num_arms();

  RegretTrace trace;
  trace.cumulative.resize(horizon);
  std::vector<Observation> buffer;
  double cumulative = 0.0;

  for (std::uint64_t t = 1; t <= horizon; ++t) {
    if (ballooning) {
      const auto arm = static_cast<ArmId>(t - 1);
      graph.insert(arm, structure[arm]);
      best = std::max(best, means[arm]);
      available = arm + 1;
      policy->on_arrival(arm);
    }
    const ArmId pulled = policy->select(t);
    if (pulled >= available) {
      throw std::logic_error(std::string(to_string(kind)) + " selected an unavailable arm");
    }

    buffer.clear();
    for (ArmId id : graph.ids_in(graph.neighborhood_range(pulled))) {
      buffer.push_back({id, rewards.draw(instance, id)});
    }
    const ObservationBatch batch{t, pulled, buffer};
    policy->observe(batch);

    const double gap = best - means[pulled];
    cumulative += gap;
    trace.cumulative[t - 1] = cumulative;
    if (hooks && hooks->after_round) hooks->after_round(RoundView{t, batch, *policy, graph, gap});
  }
  return trace;
}

RegretTrace run_trial(const BanditInstance& instance, std::string_view policy, std::uint64_t seed,
                      const PolicyOptions& options, const TrialHooks* hooks) {
  const auto kind = parse_policy_kind(policy);
  if (!kind) throw ConfigurationError("unknown policy name '" + std::string(policy) + "'");
  return run_trial(instance, *kind, seed, options, hooks);
}

BanditInstance standardize_instance(const BanditInstance& instance, std::uint64_t seed) {
  if (instance.setting() != Setting::Stationary) {
    throw InvalidParameter("standardize_instance: only stationary instances can be standardized");
  }
  const std::size_t k = instance.num_arms();
  if (k < 2) throw InvalidParameter("standardize_instance: a single arm has no non-identity permutation");
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 engine(seed);
  auto is_identity = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      if (perm[i] != i) return false;
    }
    return true;
  };
  do {
    std::shuffle(perm.begin(), perm.end(), engine);
  } while (is_identity());

  const auto& means = instance.means();
  std::vector<double> permuted(k);
  for (std::size_t v = 0; v < k; ++v) permuted[v] = means[perm[v]];
  return instance.with_permuted_means(std::move(permuted));
}

std::string ExperimentSpec::describe() const {
  std::string s;
  s += "policy=" + std::string(to_string(policy));
  s += " T=" + std::to_string(horizon);
  if (setting_of(policy) == Setting::Stationary) s += " K=" + std::to_string(num_arms);
  s += " epsilon=" + shortest(epsilon);
  s += " reward=" + std::string(to_string(reward.kind));
  if (reward.kind == RewardKind::Gaussian) s += " noise_sd=" + shortest(reward.noise_sd);
  s += " sampler=" + std::string(to_string(sampler.kind));
  if (sampler.kind == SamplerKind::FixedList) {
    s += " means=";
    for (std::size_t i = 0; i < sampler.fixed.size(); ++i) s += (i ? "," : "") + shortest(sampler.fixed[i]);
  }
  if (standardize) s += " standardize=true";
  s += " delta=" + shortest(options.delta > 0.0 ? options.delta : default_delta(horizon));
  if (policy == PolicyKind::UDoubleUcb || policy == PolicyKind::UConservativeUcb) {
    s += " tau=" + std::to_string(options.tau > 0 ? options.tau : default_tau(horizon));
  }
  return s;
}

BanditInstance make_instance(const ExperimentSpec& spec, std::uint64_t trial_seed) {
  const std::uint64_t mean_seed = derive_stream(trial_seed, StreamTag::Means);
  if (setting_of(spec.policy) == Setting::Ballooning) {
    if (spec.standardize) throw ConfigurationError("standardized instances are stationary only");
    const ArrivalStream stream{spec.sampler, spec.horizon, mean_seed};
    return BanditInstance::ballooning(stream.means(), spec.epsilon, spec.reward);
  }
  if (spec.num_arms == 0) throw ConfigurationError("stationary experiments need K >= 1");
  BanditInstance inst(sample_means(spec.sampler, spec.num_arms, mean_seed), spec.epsilon, spec.reward,
                      spec.horizon, Setting::Stationary);
  if (spec.standardize) return standardize_instance(inst, derive_stream(trial_seed, StreamTag::Permutation));
  return inst;
}

AggregateResult aggregate(const std::vector<RegretTrace>& traces) {
  AggregateResult out;
  if (traces.empty()) return out;
  const std::size_t len = traces.front().cumulative.size();
  const auto n = static_cast<double>(traces.size());
  out.mean.assign(len, 0.0);
  out.lower.assign(len, 0.0);
  out.upper.assign(len, 0.0);
  for (const auto& tr : traces) {
    if (tr.cumulative.size() != len) throw InvalidParameter("aggregate: traces differ in length");
    out.final_regrets.push_back(tr.final_regret());
  }
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (const auto& tr : traces) sum += tr.cumulative[t];
    const double mean = sum / n;
    double half = 0.0;
    if (traces.size() > 1) {
      double ss = 0.0;
      for (const auto& tr : traces) ss += (tr.cumulative[t] - mean) * (tr.cumulative[t] - mean);
      half = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    out.mean[t] = mean;
    out.lower[t] = mean - half;
    out.upper[t] = mean + half;
  }
  return out;
}

std::vector<RegretTrace> run_trials(const ExperimentSpec& spec, std::size_t n_trials, std::uint64_t root_seed,
                                    std::size_t parallelism) {
  if (n_trials == 0) throw InvalidParameter("run_batch: need at least one trial");
  std::vector<RegretTrace> traces(n_trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n_trials; i = next++) {
      try {
        const std::uint64_t trial_seed = derive_seed(root_seed, i);
        traces[i] = run_trial(make_instance(spec, trial_seed), spec.policy, trial_seed, spec.options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(parallelism, 1, n_trials);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return traces;
}

AggregateResult run_batch(const ExperimentSpec& spec, std::size_t n_trials, std::uint64_t root_seed,
                          std::size_t parallelism) {
  AggregateResult out = aggregate(run_trials(spec, n_trials, root_seed, parallelism));
  for (std::size_t i = 0; i < n_trials; ++i) out.seeds.push_back(derive_seed(root_seed, i));
  out.fingerprint = fingerprint_of(spec.describe());
  return out;
}

std::string fingerprint_of(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  auto res = std::to_chars(buf, buf + sizeof buf, h, 16);
  std::string hex(buf, res.ptr);
  return std::string(16 - hex.size(), '0') + hex;
}

}  // namespace simarms
