#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simarms/errors.hpp"
#include "simarms/simgraph.hpp"

using namespace simarms;

TEST(SimilarityGraph, EdgesUseStrictInequality) {
  // 0.25 and 0.5 are exact in binary, so the difference is exactly epsilon
  const auto g = SimilarityGraph::build(std::vector<double>{0.25, 0.5, 0.625}, 0.25);
  EXPECT_FALSE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(1, 2));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_TRUE(g.adjacent(0, 0));
  EXPECT_EQ(g.neighborhood(1), (std::vector<ArmId>{1, 2}));
}

TEST(SimilarityGraph, RejectsBadInput) {
  EXPECT_THROW(SimilarityGraph{0.0}, InvalidParameter);
  EXPECT_THROW(SimilarityGraph{INFINITY}, InvalidParameter);
  SimilarityGraph g(0.1);
  g.insert(0, 0.5);
  EXPECT_THROW(g.insert(0, 0.7), InvalidParameter);
  EXPECT_THROW(g.mean(3), InvalidParameter);
  EXPECT_THROW(g.insert(1, NAN), InvalidParameter);
}

TEST(SimilarityGraph, SelfLoopOnIsolatedArm) {
  const auto g = SimilarityGraph::build(std::vector<double>{0.0, 1.0}, 0.1);
  EXPECT_EQ(g.neighborhood(0), std::vector<ArmId>{0});
  EXPECT_EQ(g.neighborhood(1), std::vector<ArmId>{1});
}

TEST(SimilarityGraph, NeighborhoodsMatchPairwiseOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 60;
    const double eps = std::vector<double>{0.01, 0.05, 0.1, 0.3}[trial % 4];
    auto means = oracle::random_means(rng, k);
    // duplicate means and exact-epsilon gaps exercise the boundaries
    if (k > 3) {
      means[1] = means[0];
      means[2] = means[0] + eps;
    }
    const auto g = SimilarityGraph::build(means, eps);
    for (ArmId i = 0; i < k; ++i) {
      auto nb = g.neighborhood(i);
      std::sort(nb.begin(), nb.end());
      ASSERT_EQ(nb, oracle::neighborhood(means, eps, i)) << "trial " << trial << " arm " << i;
      const SortedRange r = g.neighborhood_range(i);
      // contiguous: exactly the sorted positions inside r are similar
      const auto sorted = g.sorted_means();
      for (std::size_t p = 0; p < k; ++p) {
        const bool in = r.contains(p);
        ASSERT_EQ(in, g.sorted_ids()[p] == i || g.similar(sorted[p], means[i]));
      }
    }
  }
}

TEST(SimilarityGraph, IncrementalInsertEqualsBatchBuild) {
  std::mt19937_64 rng(5);
  const auto means = oracle::random_means(rng, 300);
  SimilarityGraph grown(0.02);
  for (ArmId i = 0; i < means.size(); ++i) {
    grown.insert(i, means[i]);
    ASSERT_EQ(grown.size(), i + 1u);
  }
  const auto built = SimilarityGraph::build(means, 0.02);
  EXPECT_EQ(grown.dump(), built.dump());
  EXPECT_TRUE(std::equal(grown.sorted_ids().begin(), grown.sorted_ids().end(), built.sorted_ids().begin()));
  EXPECT_TRUE(std::is_sorted(grown.sorted_means().begin(), grown.sorted_means().end()));
}

TEST(SimilarityGraph, InsertKeepsExistingNeighborhoodsConsistent) {
  SimilarityGraph g(0.1);
  std::vector<double> means;
  std::mt19937_64 rng(8);
  for (ArmId i = 0; i < 80; ++i) {
    means.push_back(oracle::random_means(rng, 1).front());
    g.insert(i, means.back());
    for (ArmId j = 0; j <= i; ++j) {
      auto nb = g.neighborhood(j);
      std::sort(nb.begin(), nb.end());
      ASSERT_EQ(nb, oracle::neighborhood(means, 0.1, j));
    }
  }
}

TEST(SimilarityGraph, GoldenDump) {
  const auto g = SimilarityGraph::build(std::vector<double>{0.5, 0.125, 0.25, 0.75, 0.3125}, 0.2);
  // sorted: 0.125(1) 0.25(2) 0.3125(4) 0.5(0) 0.75(3)
  EXPECT_EQ(g.dump(),
            "0 0.5 2..3\n"
            "1 0.125 0..2\n"
            "2 0.25 0..2\n"
            "3 0.75 4..4\n"
            "4 0.3125 0..3\n");
}

TEST(SimilarityGraph, CompletenessAndExtremalPair) {
  const std::vector<double> means{0.5, 0.45, 0.58, 0.42, 0.7};
  const auto g = SimilarityGraph::build(means, 0.1);
  // N_0 = {0, 1, 2, 3}: spread 0.16 >= 0.1, so not complete
  EXPECT_FALSE(g.is_complete(g.neighborhood_range(0)));
  EXPECT_TRUE(g.is_complete(g.neighborhood_range(4)));
  const auto [lo, hi] = g.select_independent_pair(0);
  EXPECT_EQ(lo, 3u);
  EXPECT_EQ(hi, 2u);
  EXPECT_THROW(g.select_independent_pair(4), PreconditionError);
  EXPECT_TRUE(g.is_complete(std::vector<ArmId>{0, 1}));
  EXPECT_FALSE(g.is_complete(std::vector<ArmId>{2, 3}));
}

TEST(SimilarityGraph, ExtremalPairTiesGoToLowestId) {
  const auto g = SimilarityGraph::build(std::vector<double>{0.5, 0.55, 0.45, 0.45, 0.55}, 0.1);
  const auto [lo, hi] = g.select_independent_pair(0);
  EXPECT_EQ(lo, 2u);
  EXPECT_EQ(hi, 1u);
}

TEST(SimilarityGraph, ExtremalPairIsAlwaysInSj) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto means = oracle::random_means(rng, 14);
    const double eps = 0.15;
    const auto g = SimilarityGraph::build(means, eps);
    for (ArmId j = 0; j < means.size(); ++j) {
      const auto members = oracle::s_j(means, eps, j);
      if (g.is_complete(g.neighborhood_range(j))) continue;
      ASSERT_FALSE(members.empty()) << "S_j empty for an incomplete neighborhood";
      auto [lo, hi] = g.select_independent_pair(j);
      std::vector<ArmId> pair{std::min(lo, hi), std::max(lo, hi)};
      ASSERT_NE(std::find(members.begin(), members.end(), pair), members.end());
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(SortedRange, Intersection) {
  EXPECT_EQ(intersect({2, 6}, {4, 9}), (SortedRange{4, 6}));
  EXPECT_TRUE(intersect({0, 2}, {3, 5}).empty());
}
