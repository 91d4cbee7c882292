#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "simarms/errors.hpp"
#include "simarms/graph_stats.hpp"

using namespace simarms;

TEST(GraphStats, PathOfThree) {
  const auto g = SimilarityGraph::build(std::vector<double>{0.0, 0.1, 0.2}, 0.15);
  const auto s = graph_stats_bruteforce(g);
  EXPECT_EQ(s.independence_number, 2u);
  EXPECT_EQ(s.domination_number, 1u);
  EXPECT_EQ(s.independent_domination_number, 1u);
  EXPECT_TRUE(s.claw_free);
}

TEST(GraphStats, EdgelessAndComplete) {
  const auto edgeless = graph_stats_bruteforce(SimilarityGraph::build(std::vector<double>{0.0, 1.0, 2.0, 3.0}, 0.5));
  EXPECT_EQ(edgeless.independence_number, 4u);
  EXPECT_EQ(edgeless.domination_number, 4u);
  const auto clique = graph_stats_bruteforce(SimilarityGraph::build(std::vector<double>{0.0, 0.01, 0.02}, 0.5));
  EXPECT_EQ(clique.independence_number, 1u);
  EXPECT_EQ(clique.domination_number, 1u);
}

TEST(GraphStats, MaxIndependentSetOnArbitraryGraph) {
  // star K_{1,3} plus an isolated vertex; closed masks
  const std::vector<std::uint32_t> masks{0b01111, 0b00011, 0b00101, 0b01001, 0b10000};
  EXPECT_EQ(max_independent_set_size(masks), 4u);
  // 5-cycle
  const std::vector<std::uint32_t> c5{0b10011, 0b00111, 0b01110, 0b11100, 0b11001};
  EXPECT_EQ(max_independent_set_size(c5), 2u);
}

TEST(GraphStats, SizeLimit) {
  std::vector<double> means(kBruteForceLimit + 1);
  for (std::size_t i = 0; i < means.size(); ++i) means[i] = static_cast<double>(i);
  EXPECT_THROW(graph_stats_bruteforce(SimilarityGraph::build(means, 0.5)), SizeLimitError);
}

TEST(GraphStats, BranchAndBoundMatchesSubsetEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t k = 1 + rng() % 11;
    const double eps = std::vector<double>{0.05, 0.1, 0.2, 0.4}[trial % 4];
    const auto means = oracle::random_means(rng, k);
    const auto g = SimilarityGraph::build(means, eps);
    const auto got = graph_stats_bruteforce(g);
    const auto want = oracle::subset_stats(means, eps);
    ASSERT_EQ(got.independence_number, want.alpha) << trial;
    ASSERT_EQ(got.domination_number, want.gamma) << trial;
    ASSERT_EQ(got.independent_domination_number, want.i) << trial;
    ASSERT_EQ(got.claw_free, want.claw_free) << trial;
  }
}

TEST(GraphStats, IntervalAlgorithmsMatchBruteForce) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + rng() % 20;
    const double eps = std::vector<double>{0.03, 0.1, 0.25}[trial % 3];
    const auto g = SimilarityGraph::build(oracle::random_means(rng, k), eps);
    const auto s = graph_stats_bruteforce(g);
    ASSERT_EQ(interval_independence_number(g), s.independence_number);
    ASSERT_EQ(interval_domination_number(g), s.domination_number);
  }
}

TEST(GraphStats, NeighborhoodIndependenceAtMostTwo) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto means = oracle::random_means(rng, 20);
    const auto g = SimilarityGraph::build(means, 0.2);
    for (ArmId a = 0; a < 20; ++a) ASSERT_LE(neighborhood_independence_number(g, a), 2u);
  }
}

TEST(GraphStats, StructuralSuiteSmall) {
  const auto r = structural_suite(90, 4);
  EXPECT_EQ(r.graphs, 90u);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.summary(), "claw-free: 90/90, gamma==i: 90/90, alpha<=2*gamma: 90/90");
}

TEST(GraphStats, RandomGraphsAreDeterministicAndCoverSizes) {
  std::size_t max_seen = 0;
  for (std::size_t g = 0; g < 100; ++g) {
    const auto a = random_similarity_graph(g, 9);
    const auto b = random_similarity_graph(g, 9);
    ASSERT_EQ(a.dump(), b.dump());
    ASSERT_GE(a.size(), 1u);
    ASSERT_LE(a.size(), 12u);
    max_seen = std::max(max_seen, a.size());
  }
  EXPECT_EQ(max_seen, 12u);
}
