#include "simarms/policy_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "simarms/errors.hpp"

namespace simarms {

double confidence_log_term(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
  return std::log(std::numbers::sqrt2 / delta);
}

double confidence_radius(double log_term, std::uint64_t observations) noexcept {
  if (observations == 0) return kInf;
  return std::sqrt(log_term / static_cast<double>(observations));
}

PolicyState::PolicyState(double delta, std::size_t num_arms)
    : delta_(delta), log_term_(confidence_log_term(delta)) {
  ensure_arms(num_arms);
}

void PolicyState::ensure_arms(std::size_t count) {
  if (count <= obs_count_.size()) return;
  obs_count_.resize(count, 0);
  pull_count_.resize(count, 0);
  reward_sum_.resize(count, 0.0);
  ucb_.resize(count, kInf);
  lcb_.resize(count, -kInf);
}

double PolicyState::empirical_mean(ArmId i) const noexcept {
  return obs_count_[i] == 0 ? 0.0 : reward_sum_[i] / static_cast<double>(obs_count_[i]);
}

void PolicyState::record(const ObservationBatch& batch) {
  ensure_arms(static_cast<std::size_t>(batch.pulled) + 1);
  ++pull_count_[batch.pulled];
  for (const Observation& o : batch.observed) {
    if (o.arm >= obs_count_.size()) ensure_arms(std::max<std::size_t>(o.arm + 1, obs_count_.size() * 2));
    const std::uint64_t n = ++obs_count_[o.arm];
    reward_sum_[o.arm] += o.reward;
    const double mean = reward_sum_[o.arm] / static_cast<double>(n);
    const double r = std::sqrt(log_term_ / static_cast<double>(n));
    ucb_[o.arm] = mean + r;
    lcb_[o.arm] = mean - r;
  }
  total_observations_ += batch.observed.size();
}

}  // namespace simarms
