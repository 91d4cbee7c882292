#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "simarms/simgraph.hpp"

namespace simarms {

struct GraphStats {
  std::size_t domination_number = 0;              ///< gamma(G)
  std::size_t independent_domination_number = 0;  ///< i(G)
  std::size_t independence_number = 0;            ///< alpha(G)
  bool claw_free = true;
};

/// Largest vertex count accepted by the exhaustive searches below.
inline constexpr std::size_t kBruteForceLimit = 25;

/// Closed-neighborhood bitmasks, indexed by sorted position.
std::vector<std::uint32_t> closed_neighborhood_masks(const SimilarityGraph& graph);

/// Exact gamma, i and alpha by exhaustive search, and claw-freeness by a scan
/// of every induced 4-vertex star. Throws SizeLimitError above kBruteForceLimit.
GraphStats graph_stats_bruteforce(const SimilarityGraph& graph);

/// Maximum independent set size of an arbitrary graph on <= 32 vertices given
/// by closed-neighborhood masks (branch and bound).
std::size_t max_independent_set_size(const std::vector<std::uint32_t>& closed_masks);

/// alpha of the subgraph induced by N_arm, exhaustive.
std::size_t neighborhood_independence_number(const SimilarityGraph& graph, ArmId arm);

// Exact polynomial algorithms for similarity graphs (unit interval graphs).
// Greedy scans over sorted means; O(K) after sorting.

/// alpha(G): take the smallest mean, then repeatedly the next mean at least
/// epsilon above the last one taken.
std::size_t interval_independence_number(const SimilarityGraph& graph);
/// gamma(G) = i(G): cover the smallest uncovered mean by the largest mean
/// within epsilon of it, repeat.
std::size_t interval_domination_number(const SimilarityGraph& graph);

/// Outcome of the randomized structural suite: counts of graphs passing each
/// property out of `graphs`.
struct StructuralReport {
  std::size_t graphs = 0;
  std::size_t claw_free = 0;
  std::size_t gamma_equals_i = 0;
  std::size_t alpha_at_most_twice_gamma = 0;
  std::size_t local_alpha_at_most_two = 0;  ///< alpha(N_i) <= 2 for every arm

  bool all_pass() const noexcept {
    return claw_free == graphs && gamma_equals_i == graphs && alpha_at_most_twice_gamma == graphs &&
           local_alpha_at_most_two == graphs;
  }
  /// "claw-free: a/n, gamma==i: b/n, alpha<=2*gamma: c/n"
  std::string summary() const;
};

/// Random similarity graphs with 1..max_arms arms; graph g draws its means
/// from N(0,1), U(0,1) or the half-triangle law and uses epsilon 0.05, 0.1 or
/// 0.3, cycling through all nine combinations.
SimilarityGraph random_similarity_graph(std::size_t index, std::uint64_t seed, std::size_t max_arms = 12);

StructuralReport structural_suite(std::size_t n_graphs, std::uint64_t seed, std::size_t max_arms = 12);

}  // namespace simarms
