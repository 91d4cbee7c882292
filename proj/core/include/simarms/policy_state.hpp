#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "simarms/env.hpp"

namespace simarms {

struct Observation {
  ArmId arm;
  double reward;
};

/// One round of feedback: the pulled arm and a reward for every arm in its
/// closed neighborhood (the pulled arm included).
struct ObservationBatch {
  std::uint64_t round = 0;
  ArmId pulled = 0;
  std::span<const Observation> observed;
};

/// Confidence radius sqrt(log(sqrt(2)/delta) / n).
double confidence_radius(double log_term, std::uint64_t observations) noexcept;
/// log(sqrt(2)/delta).
double confidence_log_term(double delta);

/// Per-arm statistics shared by every policy. Upper/lower confidence indices
/// are cached and refreshed on each observation; an unobserved arm has
/// ucb = +inf and lcb = -inf.
class PolicyState {
 public:
  explicit PolicyState(double delta, std::size_t num_arms = 0);

  void ensure_arms(std::size_t count);
  void record(const ObservationBatch& batch);

  std::size_t num_arms() const noexcept { return obs_count_.size(); }
  double delta() const noexcept { return delta_; }
  double log_term() const noexcept { return log_term_; }

  std::uint64_t observations(ArmId i) const noexcept { return obs_count_[i]; }
  std::uint64_t pulls(ArmId i) const noexcept { return pull_count_[i]; }
  double reward_sum(ArmId i) const noexcept { return reward_sum_[i]; }
  double empirical_mean(ArmId i) const noexcept;
  double ucb(ArmId i) const noexcept { return ucb_[i]; }
  double lcb(ArmId i) const noexcept { return lcb_[i]; }
  bool observed(ArmId i) const noexcept { return obs_count_[i] > 0; }

  std::uint64_t total_observations() const noexcept { return total_observations_; }

 private:
  double delta_;
  double log_term_;
  std::vector<std::uint64_t> obs_count_;
  std::vector<std::uint64_t> pull_count_;
  std::vector<double> reward_sum_;
  std::vector<double> ucb_;
  std::vector<double> lcb_;
  std::uint64_t total_observations_ = 0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Argmax of `index` over `arms`; ties (including several +inf) go to the
/// lowest arm id. Returns `fallback` for an empty set.
template <typename Arms, typename Index>
ArmId argmax_lowest_id(const Arms& arms, Index&& index, ArmId fallback = 0) {
  bool found = false;
  ArmId best = fallback;
  double best_value = -kInf;
  for (ArmId a : arms) {
    const double v = index(a);
    if (!found || v > best_value || (v == best_value && a < best)) {
      found = true;
      best = a;
      best_value = v;
    }
  }
  return best;
}

}  // namespace simarms
