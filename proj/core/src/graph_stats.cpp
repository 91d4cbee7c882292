#include "simarms/graph_stats.hpp"

#include <bit>
#include <string>

#include "simarms/errors.hpp"
#include "simarms/rng.hpp"

namespace simarms {

namespace {

using Mask = std::uint32_t;

void require_budget(std::size_t n) {
  if (n > kBruteForceLimit) {
    throw SizeLimitError("exhaustive graph search supports at most " + std::to_string(kBruteForceLimit) +
                         " vertices, got " + std::to_string(n));
  }
}

Mask full_mask(std::size_t n) { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

void mis_search(const std::vector<Mask>& closed, Mask candidates, std::size_t count, std::size_t& best) {
  if (candidates == 0) {
    if (count > best) best = count;
    return;
  }
  if (count + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
  const int v = std::countr_zero(candidates);
  const Mask bit = Mask{1} << v;
  mis_search(closed, candidates & ~closed[static_cast<std::size_t>(v)], count + 1, best);
  mis_search(closed, candidates & ~bit, count, best);
}

// Can `budget` more vertices dominate everything outside `dominated`? When
// `independent` is set the chosen vertices must also be pairwise non-adjacent;
// `blocked` holds vertices adjacent to something already chosen.
bool dominate_search(const std::vector<Mask>& closed, Mask all, Mask dominated, Mask blocked,
                     std::size_t budget, bool independent) {
  if (dominated == all) return true;
  if (budget == 0) return false;
  const int u = std::countr_zero(all & ~dominated);
  Mask options = closed[static_cast<std::size_t>(u)];
  if (independent) options &= ~blocked;
  while (options) {
    const int v = std::countr_zero(options);
    options &= options - 1;
    const Mask nv = closed[static_cast<std::size_t>(v)];
    if (dominate_search(closed, all, dominated | nv, blocked | nv, budget - 1, independent)) return true;
  }
  return false;
}

std::size_t min_dominating(const std::vector<Mask>& closed, bool independent) {
  const std::size_t n = closed.size();
  if (n == 0) return 0;
  const Mask all = full_mask(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (dominate_search(closed, all, 0, 0, k, independent)) return k;
  }
  return n;
}

bool has_claw(const std::vector<Mask>& closed) {
  const std::size_t n = closed.size();
  for (std::size_t c = 0; c < n; ++c) {
    const Mask nbrs = closed[c] & ~(Mask{1} << c);
    for (Mask a_set = nbrs; a_set; a_set &= a_set - 1) {
      const int a = std::countr_zero(a_set);
      // candidates for b, d: later neighbours of c not adjacent to a
      const Mask after_a = nbrs & ~((Mask{2} << a) - 1) & ~closed[static_cast<std::size_t>(a)];
      for (Mask b_set = after_a; b_set; b_set &= b_set - 1) {
        const int b = std::countr_zero(b_set);
        const Mask after_b = after_a & ~((Mask{2} << b) - 1) & ~closed[static_cast<std::size_t>(b)];
        if (after_b) return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<std::uint32_t> closed_neighborhood_masks(const SimilarityGraph& graph) {
  const std::size_t n = graph.size();
  if (n > 32) throw SizeLimitError("closed neighborhood masks support at most 32 vertices");
  const auto means = graph.sorted_means();
  std::vector<Mask> closed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || graph.similar(means[i], means[j])) closed[i] |= Mask{1} << j;
    }
  }
  return closed;
}

std::size_t max_independent_set_size(const std::vector<std::uint32_t>& closed_masks) {
  if (closed_masks.size() > 32) throw SizeLimitError("independent set search supports at most 32 vertices");
  std::size_t best = 0;
  mis_search(closed_masks, full_mask(closed_masks.size()), 0, best);
  return best;
}

GraphStats graph_stats_bruteforce(const SimilarityGraph& graph) {
  require_budget(graph.size());
  const auto closed = closed_neighborhood_masks(graph);
  GraphStats s;
  s.independence_number = max_independent_set_size(closed);
  s.domination_number = min_dominating(closed, false);
  s.independent_domination_number = min_dominating(closed, true);
  s.claw_free = !has_claw(closed);
  return s;
}

std::size_t neighborhood_independence_number(const SimilarityGraph& graph, ArmId arm) {
  const SortedRange r = graph.neighborhood_range(arm);
  require_budget(r.size());
  const auto means = graph.sorted_means();
  std::vector<Mask> closed(r.size(), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (i == j || graph.similar(means[r.lo + i], means[r.lo + j])) closed[i] |= Mask{1} << j;
    }
  }
  return max_independent_set_size(closed);
}

std::size_t interval_independence_number(const SimilarityGraph& graph) {
  const auto means = graph.sorted_means();
  if (means.empty()) return 0;
  std::size_t count = 1;
  double last = means[0];
  for (double m : means.subspan(1)) {
    if (!graph.similar(last, m)) {
      ++count;
      last = m;
    }
  }
  return count;
}

std::size_t interval_domination_number(const SimilarityGraph& graph) {
  const auto means = graph.sorted_means();
  const std::size_t n = means.size();
  std::size_t count = 0;
  std::size_t p = 0;
  while (p < n) {
    // largest mean still within epsilon of the smallest uncovered one
    std::size_t c = p;
    while (c + 1 < n && graph.similar(means[p], means[c + 1])) ++c;
    ++count;
    p = c + 1;
    while (p < n && graph.similar(means[c], means[p])) ++p;
  }
  return count;
}

std::string StructuralReport::summary() const {
  const std::string n = "/" + std::to_string(graphs);
  return "claw-free: " + std::to_string(claw_free) + n + ", gamma==i: " + std::to_string(gamma_equals_i) + n +
         ", alpha<=2*gamma: " + std::to_string(alpha_at_most_twice_gamma) + n;
}

SimilarityGraph random_similarity_graph(std::size_t index, std::uint64_t seed, std::size_t max_arms) {
  static constexpr double kEpsilons[] = {0.05, 0.1, 0.3};
  static const MeanSampler kSamplers[] = {MeanSampler::normal(), MeanSampler::uniform(),
                                          MeanSampler::half_triangle()};
  if (max_arms == 0) throw InvalidParameter("random_similarity_graph: max_arms must be positive");
  const std::uint64_t graph_seed = derive_seed(seed, index);
  const std::size_t arms = 1 + static_cast<std::size_t>(mix64(graph_seed) % max_arms);
  const auto& sampler = kSamplers[index % 3];
  const double eps = kEpsilons[(index / 3) % 3];
  return SimilarityGraph::build(sample_means(sampler, arms, derive_stream(graph_seed, StreamTag::Means)), eps);
}

StructuralReport structural_suite(std::size_t n_graphs, std::uint64_t seed, std::size_t max_arms) {
  StructuralReport r;
  r.graphs = n_graphs;
  for (std::size_t g = 0; g < n_graphs; ++g) {
    const SimilarityGraph graph = random_similarity_graph(g, seed, max_arms);
    const GraphStats s = graph_stats_bruteforce(graph);
    if (s.claw_free) ++r.claw_free;
    if (s.domination_number == s.independent_domination_number) ++r.gamma_equals_i;
    if (s.independence_number <= 2 * s.domination_number) ++r.alpha_at_most_twice_gamma;
    bool local = true;
    for (ArmId a : graph.sorted_ids()) local = local && neighborhood_independence_number(graph, a) <= 2;
    if (local) ++r.local_alpha_at_most_two;
  }
  return r;
}

}  // namespace simarms
