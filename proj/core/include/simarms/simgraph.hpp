#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simarms/env.hpp"

namespace simarms {

/// Half-open range [lo, hi) of positions in mean-sorted order.
struct SortedRange {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const noexcept { return hi - lo; }
  bool empty() const noexcept { return hi <= lo; }
  bool contains(std::size_t pos) const noexcept { return lo <= pos && pos < hi; }
  friend bool operator==(const SortedRange&, const SortedRange&) = default;
};

SortedRange intersect(SortedRange a, SortedRange b) noexcept;

/// The epsilon-similarity feedback graph.
///
/// Distinct arms i, j are adjacent iff |mu(i) - mu(j)| < epsilon, and every arm
/// is adjacent to itself. Arms are kept sorted by (mean, id); in that order
/// every closed neighborhood N_i is a contiguous range, located by two binary
/// searches. Arm ids are arbitrary but must be unique; lookups by id are O(1).
class SimilarityGraph {
 public:
  explicit SimilarityGraph(double epsilon);

  /// Arms 0..K-1 with the given means.
  static SimilarityGraph build(std::span<const double> means, double epsilon);

  /// Adds an arm. Throws InvalidParameter if `id` is already present.
  void insert(ArmId id, double mean);

  double epsilon() const noexcept { return epsilon_; }
  std::size_t size() const noexcept { return sorted_ids_.size(); }
  bool contains(ArmId id) const noexcept;
  double mean(ArmId id) const;

  bool adjacent(ArmId a, ArmId b) const;
  bool similar(double a, double b) const noexcept;

  /// Position range of N_arm in sorted order. Throws for unknown arms.
  SortedRange neighborhood_range(ArmId arm) const;
  /// Position range of every present arm within epsilon of `mean`.
  SortedRange range_around(double mean) const noexcept;
  /// N_arm as ids, in sorted order (includes `arm`).
  std::vector<ArmId> neighborhood(ArmId arm) const;

  std::span<const ArmId> sorted_ids() const noexcept { return sorted_ids_; }
  std::span<const double> sorted_means() const noexcept { return sorted_means_; }
  std::span<const ArmId> ids_in(SortedRange range) const noexcept {
    return std::span<const ArmId>(sorted_ids_).subspan(range.lo, range.size());
  }

  /// True iff every pair of `arms` is adjacent. Empty and singleton sets are complete.
  bool is_complete(std::span<const ArmId> arms) const;
  bool is_complete(SortedRange range) const noexcept;

  /// A member of S_j: the min-mean and max-mean arms of N_j, which are
  /// non-adjacent and whose neighborhoods restricted to N_j are cliques.
  /// Among arms sharing an extremal mean the lowest id is chosen. Throws
  /// PreconditionError when N_j is complete.
  std::pair<ArmId, ArmId> select_independent_pair(ArmId j) const;

  /// One line per arm, ordered by id: "id mean lo..hi" where lo..hi is the
  /// inclusive sorted-position range of the arm's neighborhood.
  std::string dump() const;

 private:
  std::size_t position_lower(double mean, ArmId id) const noexcept;

  double epsilon_;
  std::vector<double> sorted_means_;
  std::vector<ArmId> sorted_ids_;
  std::vector<double> mean_by_id_;
  std::vector<char> present_;
};

}  // namespace simarms
