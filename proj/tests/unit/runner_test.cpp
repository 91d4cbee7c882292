#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simarms/errors.hpp"
#include "simarms/rng.hpp"
#include "simarms/runner.hpp"

using namespace simarms;

namespace {

// K well separated means and an epsilon below every gap: no edges at all.
BanditInstance edgeless(std::mt19937_64& rng, std::size_t k, std::uint64_t horizon) {
  auto means = oracle::random_means(rng, k);
  std::vector<double> sorted = means;
  std::sort(sorted.begin(), sorted.end());
  double min_gap = 1.0;
  for (std::size_t i = 1; i < k; ++i) min_gap = std::min(min_gap, sorted[i] - sorted[i - 1]);
  return BanditInstance(std::move(means), min_gap / 2, RewardModel::bernoulli(), horizon);
}

ExperimentSpec small_spec(PolicyKind kind) {
  ExperimentSpec spec;
  spec.policy = kind;
  spec.horizon = 300;
  spec.num_arms = 40;
  spec.epsilon = 0.05;
  return spec;
}

}  // namespace

TEST(Runner, TrialIsDeterministicInItsSeed) {
  const auto spec = small_spec(PolicyKind::DoubleUcb);
  const auto inst = make_instance(spec, 77);
  const auto a = run_trial(inst, spec.policy, 77);
  const auto b = run_trial(inst, spec.policy, 77);
  const auto c = run_trial(inst, spec.policy, 78);
  EXPECT_EQ(a.cumulative, b.cumulative);
  EXPECT_NE(a.cumulative, c.cumulative);
}

TEST(Runner, RegretIsNonNegativeAndNonDecreasing) {
  for (auto name : policy_names()) {
    const auto kind = *parse_policy_kind(name);
    auto spec = small_spec(kind);
    const auto inst = make_instance(spec, 5);
    const auto trace = run_trial(inst, kind, 5);
    ASSERT_EQ(trace.cumulative.size(), spec.horizon);
    double prev = 0.0;
    for (double r : trace.cumulative) {
      ASSERT_GE(r, prev) << name;
      prev = r;
    }
  }
}

TEST(Runner, RoundGapMatchesMeans) {
  const auto inst = make_instance(small_spec(PolicyKind::UcbN), 9);
  const double best = *std::max_element(inst.means().begin(), inst.means().end());
  double total = 0.0;
  TrialHooks hooks;
  hooks.after_round = [&](const RoundView& v) {
    ASSERT_DOUBLE_EQ(v.gap, best - inst.means()[v.batch.pulled]);
    total += v.gap;
  };
  const auto trace = run_trial(inst, PolicyKind::UcbN, 9, {}, &hooks);
  EXPECT_NEAR(trace.final_regret(), total, 1e-9);
}

TEST(Runner, SettingMismatchIsRejected) {
  const auto stationary = make_instance(small_spec(PolicyKind::UcbN), 1);
  EXPECT_THROW(run_trial(stationary, PolicyKind::DoubleUcbBl, 1), ConfigurationError);
  const auto balloon = make_instance(small_spec(PolicyKind::DoubleUcbBl), 1);
  EXPECT_THROW(run_trial(balloon, PolicyKind::DoubleUcb, 1), ConfigurationError);
  EXPECT_THROW(run_trial(stationary, "nope", 1), ConfigurationError);
}

TEST(Runner, EdgelessInstancesReduceToVanillaUcb) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    const auto inst = edgeless(rng, 15, 800);
    const std::uint64_t seed = derive_seed(99, rep);
    const auto expected = oracle::vanilla_ucb_pulls(inst, seed, 1.0 / 800);
    for (PolicyKind kind : {PolicyKind::UcbN, PolicyKind::DoubleUcb, PolicyKind::ConservativeUcb}) {
      std::vector<ArmId> pulls;
      TrialHooks hooks;
      hooks.after_round = [&](const RoundView& v) { pulls.push_back(v.batch.pulled); };
      run_trial(inst, kind, seed, {}, &hooks);
      EXPECT_EQ(pulls, expected) << to_string(kind);
    }
  }
}

TEST(Runner, ObservationsFollowTheStructureGraph) {
  const auto inst = make_instance(small_spec(PolicyKind::UcbN), 4);
  TrialHooks hooks;
  hooks.after_round = [&](const RoundView& v) {
    std::vector<ArmId> seen;
    for (const auto& o : v.batch.observed) seen.push_back(o.arm);
    std::sort(seen.begin(), seen.end());
    ASSERT_EQ(seen, oracle::neighborhood(inst.means(), inst.epsilon(), v.batch.pulled));
  };
  run_trial(inst, PolicyKind::UcbN, 4, {}, &hooks);
}

TEST(Standardize, KeepsStructureAndPermutesMeans) {
  auto spec = small_spec(PolicyKind::UcbN);
  spec.num_arms = 500;
  spec.epsilon = 0.01;
  const auto base = make_instance(spec, 3);
  spec.standardize = true;
  const auto std_inst = make_instance(spec, 3);
  EXPECT_FALSE(std_inst.has_similarity_structure());
  EXPECT_EQ(std_inst.structure_means(), base.means());
  EXPECT_NE(std_inst.means(), base.means());
  auto a = std_inst.means();
  auto b = base.means();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  // some edge of the frozen graph now joins arms whose means are far apart
  const auto g = SimilarityGraph::build(std_inst.structure_means(), spec.epsilon);
  bool violated = false;
  for (ArmId i = 0; i < spec.num_arms && !violated; ++i) {
    for (ArmId j : g.neighborhood(i)) {
      if (std::abs(std_inst.means()[i] - std_inst.means()[j]) >= spec.epsilon) violated = true;
    }
  }
  EXPECT_TRUE(violated);
}

TEST(Standardize, TwoArmsAreSwappedAndOneArmIsRejected) {
  const BanditInstance two({0.2, 0.7}, 0.1, RewardModel::bernoulli(), 10);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = standardize_instance(two, seed);
    EXPECT_EQ(s.means(), (std::vector<double>{0.7, 0.2}));
  }
  const BanditInstance one({0.4}, 0.1, RewardModel::bernoulli(), 10);
  EXPECT_THROW(standardize_instance(one, 1), InvalidParameter);
}

TEST(Aggregate, MatchesManualComputation) {
  const std::vector<RegretTrace> traces{{{1.0, 2.0, 4.0}}, {{0.0, 3.0, 5.0}}, {{2.0, 2.0, 9.0}}};
  const auto agg = aggregate(traces);
  const double mean_last = 6.0;
  const double sd_last = std::sqrt(((4 - 6.0) * (4 - 6.0) + (5 - 6.0) * (5 - 6.0) + (9 - 6.0) * (9 - 6.0)) / 2.0);
  EXPECT_DOUBLE_EQ(agg.mean[0], 1.0);
  EXPECT_DOUBLE_EQ(agg.mean[2], mean_last);
  EXPECT_NEAR(agg.upper[2], mean_last + 1.96 * sd_last / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(agg.lower[2], mean_last - 1.96 * sd_last / std::sqrt(3.0), 1e-12);
  EXPECT_EQ(agg.final_regrets, (std::vector<double>{4.0, 5.0, 9.0}));
  const auto single = aggregate({traces[0]});
  EXPECT_EQ(single.lower, single.mean);
  EXPECT_EQ(single.upper, single.mean);
  EXPECT_THROW(aggregate({traces[0], RegretTrace{{1.0}}}), InvalidParameter);
}

TEST(Batch, ThreadCountDoesNotChangeResults) {
  for (PolicyKind kind : {PolicyKind::ConservativeUcb, PolicyKind::UDoubleUcb}) {
    const auto spec = small_spec(kind);
    const auto a = run_batch(spec, 12, 42, 1);
    const auto b = run_batch(spec, 12, 42, 8);
    EXPECT_EQ(a, b);
    ASSERT_EQ(a.seeds.size(), 12u);
    EXPECT_EQ(a.seeds[3], derive_seed(42, 3));
    EXPECT_FALSE(a.fingerprint.empty());
  }
}

TEST(Batch, FingerprintTracksTheSpec) {
  auto spec = small_spec(PolicyKind::UcbN);
  const auto f1 = fingerprint_of(spec.describe());
  spec.epsilon = 0.06;
  EXPECT_NE(fingerprint_of(spec.describe()), f1);
  EXPECT_EQ(fingerprint_of(""), "cbf29ce484222325");
}
