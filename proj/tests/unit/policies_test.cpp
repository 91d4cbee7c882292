#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simarms/errors.hpp"
#include "simarms/policies.hpp"
#include "simarms/rng.hpp"
#include "simarms/runner.hpp"

using namespace simarms;

namespace {

BanditInstance stationary(std::vector<double> means, double eps, std::uint64_t horizon) {
  return BanditInstance(std::move(means), eps, RewardModel::bernoulli(), horizon);
}

BanditInstance ballooning(const MeanSampler& sampler, std::uint64_t horizon, double eps, std::uint64_t seed) {
  const ArrivalStream stream{sampler, horizon, seed};
  const auto reward = sampler.kind == SamplerKind::Normal01 ? RewardModel::gaussian() : RewardModel::bernoulli();
  return BanditInstance::ballooning(stream.means(), eps, reward);
}

std::vector<ArmId> sorted_copy(std::span<const ArmId> s) {
  std::vector<ArmId> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ArmId> first_n(std::size_t n) {
  std::vector<ArmId> v(n);
  for (ArmId i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(Policies, NamesRoundTrip) {
  ASSERT_EQ(policy_names().size(), 8u);
  for (auto name : policy_names()) {
    const auto kind = parse_policy_kind(name);
    ASSERT_TRUE(kind.has_value()) << name;
    EXPECT_EQ(to_string(*kind), name);
  }
  EXPECT_FALSE(parse_policy_kind("thompson").has_value());
  EXPECT_EQ(setting_of(PolicyKind::UcbN), Setting::Stationary);
  EXPECT_EQ(setting_of(PolicyKind::ConservativeUcbGraph), Setting::Stationary);
  EXPECT_EQ(setting_of(PolicyKind::DoubleUcbBl), Setting::Ballooning);
  EXPECT_EQ(setting_of(PolicyKind::UConservativeUcb), Setting::Ballooning);
}

TEST(Policies, Defaults) {
  EXPECT_DOUBLE_EQ(default_delta(1000), 1e-3);
  EXPECT_EQ(default_tau(100), 10u);
  EXPECT_EQ(default_tau(101), 11u);
  EXPECT_EQ(default_tau(1), 1u);
  EXPECT_EQ(default_tau(100000), 317u);
}

TEST(Policies, FactoryErrors) {
  PolicyContext ctx;
  ctx.num_arms = 3;
  ctx.horizon = 10;
  EXPECT_THROW(make_policy("nope", ctx), ConfigurationError);
  EXPECT_THROW(make_policy(PolicyKind::ConservativeUcbGraph, ctx), ConfigurationError);
  EXPECT_THROW(make_policy(PolicyKind::DoubleUcbBl, ctx), ConfigurationError);
  EXPECT_NO_THROW(make_policy(PolicyKind::UDoubleUcb, ctx));
  EXPECT_THROW(UnknownGraphPolicy(0, 0.1, UnknownGraphPolicy::Inner::Upper), InvalidParameter);
  ctx.delta = 1.5;
  EXPECT_THROW(make_policy(PolicyKind::UcbN, ctx), InvalidParameter);
  ctx.delta = 0.0;
  ctx.num_arms = 0;
  EXPECT_THROW(make_policy(PolicyKind::UcbN, ctx), InvalidParameter);
}

TEST(PolicyState, ConfidenceIndices) {
  PolicyState s(0.01, 2);
  EXPECT_EQ(s.ucb(0), kInf);
  EXPECT_EQ(s.lcb(0), -kInf);
  const Observation obs[] = {{0, 1.0}, {1, 0.0}};
  s.record({1, 0, obs});
  s.record({2, 0, std::span<const Observation>(obs, 1)});
  const double radius = std::sqrt(std::log(std::sqrt(2.0) / 0.01) / 2.0);
  EXPECT_NEAR(s.ucb(0), 1.0 + radius, 1e-12);
  EXPECT_NEAR(s.lcb(0), 1.0 - radius, 1e-12);
  EXPECT_EQ(s.observations(0), 2u);
  EXPECT_EQ(s.observations(1), 1u);
  EXPECT_EQ(s.pulls(0), 2u);
  EXPECT_EQ(s.pulls(1), 0u);
  EXPECT_EQ(s.total_observations(), 3u);
  EXPECT_THROW(PolicyState(0.0), InvalidParameter);
}

TEST(Policies, ArgmaxBreaksTiesTowardLowestId) {
  const std::vector<ArmId> arms{5, 2, 7, 3};
  EXPECT_EQ(argmax_lowest_id(arms, [](ArmId) { return 1.0; }), 2u);
  EXPECT_EQ(argmax_lowest_id(arms, [](ArmId a) { return a == 7 ? 2.0 : 1.0; }), 7u);
}

TEST(DoubleUcb, InitialPhaseBuildsMaximalIndependentSetAndRevealsNeighborhoods) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = 0.1;
    auto means = oracle::random_means(rng, 40);
    const auto inst = stationary(means, eps, 200);
    for (PolicyKind kind : {PolicyKind::DoubleUcb, PolicyKind::ConservativeUcb}) {
      bool checked = false;
      TrialHooks hooks;
      hooks.after_round = [&](const RoundView& v) {
        const auto& p = dynamic_cast<const DoubleUcbPolicy&>(v.policy);
        if (p.in_initial_phase() || checked) return;
        checked = true;
        const auto I = sorted_copy(p.independent_set());
        ASSERT_TRUE(oracle::independent(means, eps, I));
        ASSERT_TRUE(oracle::dominates(means, eps, I, first_n(means.size())));
        for (std::size_t k = 0; k < p.independent_set().size(); ++k) {
          const auto revealed = sorted_copy(p.revealed_neighborhood(k));
          ASSERT_EQ(revealed, oracle::neighborhood(means, eps, p.independent_set()[k]));
        }
      };
      run_trial(inst, kind, derive_seed(1, trial), {}, &hooks);
      EXPECT_TRUE(checked);
    }
  }
}

TEST(DoubleUcb, SteadyPullsStayInsideTheChosenNeighborhood) {
  std::mt19937_64 rng(4);
  const double eps = 0.05;
  const auto means = oracle::random_means(rng, 60);
  const auto inst = stationary(means, eps, 2000);
  for (PolicyKind kind : {PolicyKind::DoubleUcb, PolicyKind::ConservativeUcb, PolicyKind::ConservativeUcbGraph}) {
    TrialHooks hooks;
    hooks.after_round = [&](const RoundView& v) {
      const auto I = v.policy.independent_set();
      // every pull lies in N_j for some j in I
      bool covered = false;
      for (ArmId j : I) covered = covered || oracle::adjacent(means, eps, j, v.batch.pulled);
      ASSERT_TRUE(covered);
      ASSERT_EQ(v.batch.observed.size(), oracle::neighborhood(means, eps, v.batch.pulled).size());
    };
    run_trial(inst, kind, 11, {}, &hooks);
  }
}

TEST(ConservativeGraph, SelectionFollowsTheExtremalPairRule) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const double eps = 0.12;
    const auto means = oracle::random_means(rng, 12);
    const auto g = SimilarityGraph::build(means, eps);
    PolicyState state(0.05, means.size());
    // random observation history
    std::vector<Observation> obs;
    for (int r = 0; r < 30; ++r) {
      obs.clear();
      for (ArmId a = 0; a < means.size(); ++a) {
        if (rng() % 3 == 0) obs.push_back({a, static_cast<double>(rng() % 2)});
      }
      state.record({static_cast<std::uint64_t>(r + 1), 0, obs});
    }
    for (ArmId j = 0; j < means.size(); ++j) {
      const ArmId pick = conservative_graph_select(g, state, j);
      const auto nj = oracle::neighborhood(means, eps, j);
      ASSERT_TRUE(std::binary_search(nj.begin(), nj.end(), pick));
      std::vector<ArmId> pool = nj;
      if (!oracle::complete(means, eps, nj)) {
        const auto members = oracle::s_j(means, eps, j);
        auto [lo, hi] = g.select_independent_pair(j);
        const ArmId jp = argmax_lowest_id(std::vector<ArmId>{std::min(lo, hi), std::max(lo, hi)},
                                          [&](ArmId a) { return state.ucb(a); });
        std::vector<ArmId> pair{std::min(lo, hi), std::max(lo, hi)};
        ASSERT_NE(std::find(members.begin(), members.end(), pair), members.end());
        pool = oracle::intersection(oracle::neighborhood(means, eps, jp), nj);
        ASSERT_TRUE(oracle::complete(means, eps, pool));
      }
      const ArmId want = argmax_lowest_id(pool, [&](ArmId a) { return state.lcb(a); });
      ASSERT_EQ(pick, want);
    }
  }
}

TEST(Ballooning, IndependentSetMatchesOfflineGreedyEveryRound) {
  for (auto sampler : {MeanSampler::uniform(), MeanSampler::normal(), MeanSampler::half_triangle()}) {
    const double eps = sampler.kind == SamplerKind::Normal01 ? 0.3 : 0.05;
    const auto inst = ballooning(sampler, 600, eps, 21);
    const auto& means = inst.means();
    for (PolicyKind kind : {PolicyKind::DoubleUcbBl, PolicyKind::ConservativeUcbBl}) {
      TrialHooks hooks;
      hooks.after_round = [&](const RoundView& v) {
        const auto n = static_cast<std::size_t>(v.round);
        const auto I = sorted_copy(v.policy.independent_set());
        ASSERT_EQ(I, oracle::greedy_independent_set(means, eps, n));
        if (n % 97 == 0) ASSERT_TRUE(oracle::dominates(means, eps, I, first_n(n)));
        ASSERT_LT(v.batch.pulled, n);
      };
      run_trial(inst, kind, 3, {}, &hooks);
    }
  }
}

TEST(UnknownGraph, WarmUpPullsNewestArm) {
  const auto inst = ballooning(MeanSampler::uniform(), 400, 0.05, 5);
  TrialHooks hooks;
  hooks.after_round = [&](const RoundView& v) {
    if (v.round <= 20) ASSERT_EQ(v.batch.pulled, v.round - 1);
  };
  PolicyOptions opts;
  opts.tau = 20;
  run_trial(inst, PolicyKind::UDoubleUcb, 1, opts, &hooks);
}

TEST(UnknownGraph, RefreshDominatesAllEarlierArrivals) {
  for (PolicyKind kind : {PolicyKind::UDoubleUcb, PolicyKind::UConservativeUcb}) {
    const double eps = 0.05;
    const auto inst = ballooning(MeanSampler::uniform(), 900, eps, 8);
    const auto& means = inst.means();
    PolicyOptions opts;
    opts.tau = 30;
    bool was_refreshing = false;
    std::uint64_t completed = 0;
    TrialHooks hooks;
    hooks.after_round = [&](const RoundView& v) {
      const auto& p = dynamic_cast<const UnknownGraphPolicy&>(v.policy);
      if (was_refreshing && !p.in_refresh()) {
        // the refresh just ended: I dominates the arms it covered
        const auto I = sorted_copy(p.independent_set());
        ASSERT_TRUE(oracle::dominates(means, eps, I, first_n(p.refresh_target())));
        ++completed;
      }
      was_refreshing = p.in_refresh();
    };
    run_trial(inst, kind, 4, opts, &hooks);
    EXPECT_GT(completed, 10u);
  }
}

TEST(UnknownGraph, LearnedNeighborhoodsAreSoundAndCoverTheLastPull) {
  const double eps = 0.1;
  const auto inst = ballooning(MeanSampler::uniform(), 500, eps, 12);
  const auto& means = inst.means();
  std::vector<std::uint64_t> last_pull(means.size(), 0);
  PolicyOptions opts;
  opts.tau = 15;
  TrialHooks hooks;
  hooks.after_round = [&](const RoundView& v) {
    const auto& p = dynamic_cast<const UnknownGraphPolicy&>(v.policy);
    last_pull[v.batch.pulled] = v.round;
    if (v.round % 50 != 0) return;
    const auto n = static_cast<std::size_t>(v.round);
    for (ArmId a = 0; a < n; ++a) {
      if (!p.learned().pulled(a)) continue;
      const auto learned = p.learned().neighbors_of_pulled(a);
      const auto truth = oracle::neighborhood(std::vector<double>(means.begin(), means.begin() + n), eps, a);
      // sound
      for (ArmId b : learned) ASSERT_TRUE(std::binary_search(truth.begin(), truth.end(), b));
      // complete with respect to the arms present at a's latest pull
      for (ArmId b : truth) {
        if (b < last_pull[a]) ASSERT_TRUE(std::binary_search(learned.begin(), learned.end(), b));
      }
    }
  };
  run_trial(inst, PolicyKind::UConservativeUcb, 9, opts, &hooks);
}
