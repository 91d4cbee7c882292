#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simarms {

using ArmId = std::uint32_t;

enum class RewardKind { Bernoulli, Gaussian };

/// Reward distribution shared by every arm of an instance. Gaussian rewards
/// are centred on the arm mean with a fixed standard deviation (1/2 unless
/// overridden).
struct RewardModel {
  RewardKind kind = RewardKind::Bernoulli;
  double noise_sd = 0.5;

  static RewardModel bernoulli() { return {RewardKind::Bernoulli, 0.5}; }
  static RewardModel gaussian(double sd = 0.5) { return {RewardKind::Gaussian, sd}; }
};

enum class SamplerKind { Normal01, Uniform01, HalfTriangle, FixedList };

/// Distribution P from which arm means are drawn i.i.d.
struct MeanSampler {
  SamplerKind kind = SamplerKind::Uniform01;
  std::vector<double> fixed;  ///< only used by FixedList

  static MeanSampler normal() { return {SamplerKind::Normal01, {}}; }
  static MeanSampler uniform() { return {SamplerKind::Uniform01, {}}; }
  static MeanSampler half_triangle() { return {SamplerKind::HalfTriangle, {}}; }
  static MeanSampler fixed_list(std::vector<double> means) {
    return {SamplerKind::FixedList, std::move(means)};
  }
};

std::string_view to_string(RewardKind kind);
std::string_view to_string(SamplerKind kind);
std::optional<RewardKind> parse_reward_kind(std::string_view name);
std::optional<SamplerKind> parse_sampler_kind(std::string_view name);

/// Half-triangle density f(x) = 2(1 - x) on (0, 1), by inverse CDF.
double half_triangle_quantile(double u) noexcept;
/// CDF of the half-triangle distribution, F(x) = 2x - x^2 on [0, 1].
double half_triangle_cdf(double x) noexcept;

/// `count` i.i.d. draws from `sampler`; deterministic in `seed`. A FixedList
/// sampler returns its first `count` entries and throws InvalidParameter when
/// it holds fewer.
std::vector<double> sample_means(const MeanSampler& sampler, std::size_t count, std::uint64_t seed);

enum class Setting { Stationary, Ballooning };

/// Ground-truth environment. Policies never see it directly.
///
/// `structure_means` define the feedback graph. They equal `means` for a
/// similarity instance; a standardized instance keeps the original structure
/// but permutes the reward means over the nodes.
class BanditInstance {
 public:
  BanditInstance(std::vector<double> means, double epsilon, RewardModel reward,
                 std::uint64_t horizon, Setting setting = Setting::Stationary);

  static BanditInstance ballooning(std::vector<double> means, double epsilon, RewardModel reward);

  const std::vector<double>& means() const noexcept { return means_; }
  const std::vector<double>& structure_means() const noexcept {
    return structure_means_ ? *structure_means_ : means_;
  }
  bool has_similarity_structure() const noexcept { return !structure_means_.has_value(); }
  double epsilon() const noexcept { return epsilon_; }
  const RewardModel& reward_model() const noexcept { return reward_; }
  std::uint64_t horizon() const noexcept { return horizon_; }
  Setting setting() const noexcept { return setting_; }
  std::size_t num_arms() const noexcept { return means_.size(); }

  /// Same structure, reward means reassigned to nodes.
  BanditInstance with_permuted_means(std::vector<double> permuted) const;

 private:
  std::vector<double> means_;
  std::optional<std::vector<double>> structure_means_;
  double epsilon_;
  RewardModel reward_;
  std::uint64_t horizon_;
  Setting setting_;
};

/// Draws a single reward for an arm with true mean `mean`. Throws
/// InvalidInstance for a Bernoulli mean outside [0, 1].
double draw_reward(const RewardModel& model, double mean, std::uint64_t key, ArmId arm,
                   std::uint64_t draw_index);

/// Per-trial reward generator. The k-th draw of arm i depends only on
/// (seed, i, k): adding arms or reordering observations of other arms never
/// changes an arm's reward sequence.
class RewardStream {
 public:
  explicit RewardStream(std::uint64_t seed) : seed_(seed) {}

  double draw(const BanditInstance& instance, ArmId arm);
  std::uint64_t draws_of(ArmId arm) const noexcept {
    return arm < counters_.size() ? counters_[arm] : 0;
  }

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> counters_;
};

/// Arrival process of the ballooning setting: one arm per round.
struct ArrivalStream {
  MeanSampler sampler;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;

  /// Means of a_1..a_T in arrival order.
  std::vector<double> means() const;
};

/// Running maxima: entry t is the best mean among the first t+1 arms.
std::vector<double> optimal_mean_prefix(std::span<const double> means);

}  // namespace simarms
