#include "simarms/simgraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "simarms/errors.hpp"

namespace simarms {

SortedRange intersect(SortedRange a, SortedRange b) noexcept {
  const std::size_t lo = std::max(a.lo, b.lo);
  const std::size_t hi = std::min(a.hi, b.hi);
  return hi > lo ? SortedRange{lo, hi} : SortedRange{lo, lo};
}

SimilarityGraph::SimilarityGraph(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameter("similarity graph: epsilon must be a positive finite number");
  }
}

SimilarityGraph SimilarityGraph::build(std::span<const double> means, double epsilon) {
  SimilarityGraph g(epsilon);
  const std::size_t k = means.size();
  std::vector<ArmId> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = static_cast<ArmId>(i);
  std::sort(order.begin(), order.end(), [&](ArmId a, ArmId b) {
    return means[a] < means[b] || (means[a] == means[b] && a < b);
  });
  g.sorted_ids_ = order;
  g.sorted_means_.resize(k);
  for (std::size_t p = 0; p < k; ++p) g.sorted_means_[p] = means[order[p]];
  g.mean_by_id_.assign(means.begin(), means.end());
  g.present_.assign(k, 1);
  for (double m : means) {
    if (!std::isfinite(m)) throw InvalidParameter("similarity graph: means must be finite");
  }
  return g;
}

std::size_t SimilarityGraph::position_lower(double mean, ArmId id) const noexcept {
  // first position whose (mean, id) is not less than the key
  auto lo = std::lower_bound(sorted_means_.begin(), sorted_means_.end(), mean);
  auto hi = std::upper_bound(lo, sorted_means_.end(), mean);
  auto first = static_cast<std::size_t>(lo - sorted_means_.begin());
  auto last = static_cast<std::size_t>(hi - sorted_means_.begin());
  auto it = std::lower_bound(sorted_ids_.begin() + static_cast<std::ptrdiff_t>(first),
                             sorted_ids_.begin() + static_cast<std::ptrdiff_t>(last), id);
  return static_cast<std::size_t>(it - sorted_ids_.begin());
}

void SimilarityGraph::insert(ArmId id, double mean) {
  if (contains(id)) throw InvalidParameter("similarity graph: arm id " + std::to_string(id) + " already present");
  if (!std::isfinite(mean)) throw InvalidParameter("similarity graph: means must be finite");
  const std::size_t pos = position_lower(mean, id);
  sorted_means_.insert(sorted_means_.begin() + static_cast<std::ptrdiff_t>(pos), mean);
  sorted_ids_.insert(sorted_ids_.begin() + static_cast<std::ptrdiff_t>(pos), id);
  if (id >= mean_by_id_.size()) {
    const std::size_t grown = std::max<std::size_t>(id + 1, mean_by_id_.size() * 2);
    mean_by_id_.resize(grown, 0.0);
    present_.resize(grown, 0);
  }
  mean_by_id_[id] = mean;
  present_[id] = 1;
}

bool SimilarityGraph::contains(ArmId id) const noexcept { return id < present_.size() && present_[id]; }

double SimilarityGraph::mean(ArmId id) const {
  if (!contains(id)) throw InvalidParameter("similarity graph: unknown arm " + std::to_string(id));
  return mean_by_id_[id];
}

bool SimilarityGraph::similar(double a, double b) const noexcept { return std::abs(a - b) < epsilon_; }

bool SimilarityGraph::adjacent(ArmId a, ArmId b) const {
  const double ma = mean(a);
  const double mb = mean(b);
  return a == b || similar(ma, mb);
}

SortedRange SimilarityGraph::range_around(double m) const noexcept {
  // Both predicates use the same rounded differences as `similar`, so the
  // range agrees exactly with the pairwise edge rule.
  const double eps = epsilon_;
  auto lo = std::partition_point(sorted_means_.begin(), sorted_means_.end(),
                                 [&](double x) { return x < m && m - x >= eps; });
  auto hi = std::partition_point(lo, sorted_means_.end(), [&](double x) { return x <= m || x - m < eps; });
  return {static_cast<std::size_t>(lo - sorted_means_.begin()),
          static_cast<std::size_t>(hi - sorted_means_.begin())};
}

SortedRange SimilarityGraph::neighborhood_range(ArmId arm) const { return range_around(mean(arm)); }

std::vector<ArmId> SimilarityGraph::neighborhood(ArmId arm) const {
  const auto ids = ids_in(neighborhood_range(arm));
  return {ids.begin(), ids.end()};
}

bool SimilarityGraph::is_complete(SortedRange range) const noexcept {
  if (range.size() <= 1) return true;
  return similar(sorted_means_[range.lo], sorted_means_[range.hi - 1]);
}

bool SimilarityGraph::is_complete(std::span<const ArmId> arms) const {
  if (arms.empty()) return true;
  double lo = mean(arms.front());
  double hi = lo;
  for (ArmId a : arms) {
    const double m = mean(a);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return similar(lo, hi);
}

std::pair<ArmId, ArmId> SimilarityGraph::select_independent_pair(ArmId j) const {
  const SortedRange r = neighborhood_range(j);
  if (is_complete(r)) {
    throw PreconditionError("select_independent_pair: neighborhood of arm " + std::to_string(j) + " is complete");
  }
  const ArmId low = sorted_ids_[r.lo];
  const double top = sorted_means_[r.hi - 1];
  auto first_top = std::lower_bound(sorted_means_.begin() + static_cast<std::ptrdiff_t>(r.lo),
                                    sorted_means_.begin() + static_cast<std::ptrdiff_t>(r.hi), top);
  const ArmId high = sorted_ids_[static_cast<std::size_t>(first_top - sorted_means_.begin())];
  return {low, high};
}

std::string SimilarityGraph::dump() const {
  std::string out;
  char buf[64];
  for (ArmId id = 0; id < mean_by_id_.size(); ++id) {
    if (!present_[id]) continue;
    const SortedRange r = neighborhood_range(id);
    out += std::to_string(id);
    out += ' ';
    auto res = std::to_chars(buf, buf + sizeof buf, mean_by_id_[id]);
    out.append(buf, res.ptr);
    out += ' ';
    out += std::to_string(r.lo);
    out += "..";
    out += std::to_string(r.hi - 1);
    out += '\n';
  }
  return out;
}

}  // namespace simarms
