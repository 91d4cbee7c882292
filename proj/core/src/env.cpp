#include "simarms/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "simarms/errors.hpp"
#include "simarms/rng.hpp"

namespace simarms {

std::string_view to_string(RewardKind kind) {
  return kind == RewardKind::Bernoulli ? "bernoulli" : "gaussian";
}

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Normal01: return "normal";
    case SamplerKind::Uniform01: return "uniform";
    case SamplerKind::HalfTriangle: return "half-triangle";
    case SamplerKind::FixedList: return "fixed";
  }
  return "unknown";
}

std::optional<RewardKind> parse_reward_kind(std::string_view name) {
  if (name == "bernoulli") return RewardKind::Bernoulli;
  if (name == "gaussian") return RewardKind::Gaussian;
  return std::nullopt;
}

std::optional<SamplerKind> parse_sampler_kind(std::string_view name) {
  if (name == "normal") return SamplerKind::Normal01;
  if (name == "uniform") return SamplerKind::Uniform01;
  if (name == "half-triangle") return SamplerKind::HalfTriangle;
  if (name == "fixed") return SamplerKind::FixedList;
  return std::nullopt;
}

double half_triangle_quantile(double u) noexcept { return 1.0 - std::sqrt(1.0 - u); }

double half_triangle_cdf(double x) noexcept {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 2.0 * x - x * x;
}

std::vector<double> sample_means(const MeanSampler& sampler, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InvalidParameter("sample_means: count must be at least 1");
  if (sampler.kind == SamplerKind::FixedList) {
    if (sampler.fixed.size() < count) {
      throw InvalidParameter("sample_means: fixed list holds " + std::to_string(sampler.fixed.size()) +
                             " means but " + std::to_string(count) + " were requested");
    }
    return {sampler.fixed.begin(), sampler.fixed.begin() + static_cast<std::ptrdiff_t>(count)};
  }

  std::mt19937_64 engine(seed);
  std::vector<double> out(count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto open_unit = [&] {
    double u = unit(engine);
    while (u <= 0.0) u = unit(engine);
    return u;
  };

  switch (sampler.kind) {
    case SamplerKind::Normal01: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& m : out) m = normal(engine);
      break;
    }
    case SamplerKind::Uniform01:
      for (auto& m : out) m = open_unit();
      break;
    case SamplerKind::HalfTriangle:
      for (auto& m : out) m = half_triangle_quantile(open_unit());
      break;
    case SamplerKind::FixedList:
      break;
  }
  return out;
}

namespace {

void validate_means(std::span<const double> means, double epsilon, const RewardModel& reward) {
  if (!(epsilon > 0.0)) throw InvalidInstance("epsilon must be positive");
  if (means.empty()) throw InvalidInstance("instance needs at least one arm");
  for (double m : means) {
    if (!std::isfinite(m)) throw InvalidInstance("arm means must be finite");
    if (reward.kind == RewardKind::Bernoulli && (m < 0.0 || m > 1.0)) {
      throw InvalidInstance("Bernoulli rewards require every mean in [0, 1]");
    }
  }
  if (reward.kind == RewardKind::Gaussian && !(reward.noise_sd > 0.0)) {
    throw InvalidInstance("Gaussian noise standard deviation must be positive");
  }
}

}  // namespace

BanditInstance::BanditInstance(std::vector<double> means, double epsilon, RewardModel reward,
                               std::uint64_t horizon, Setting setting)
    : means_(std::move(means)), epsilon_(epsilon), reward_(reward), horizon_(horizon), setting_(setting) {
  validate_means(means_, epsilon_, reward_);
  if (horizon_ == 0) throw InvalidInstance("horizon must be positive");
  if (setting_ == Setting::Ballooning && means_.size() != horizon_) {
    throw InvalidInstance("ballooning instance needs exactly one arm per round");
  }
}

BanditInstance BanditInstance::ballooning(std::vector<double> means, double epsilon, RewardModel reward) {
  const auto horizon = static_cast<std::uint64_t>(means.size());
  return BanditInstance(std::move(means), epsilon, reward, horizon, Setting::Ballooning);
}

BanditInstance BanditInstance::with_permuted_means(std::vector<double> permuted) const {
  if (permuted.size() != means_.size()) throw InvalidInstance("permuted means must keep the arm count");
  BanditInstance out(std::move(permuted), epsilon_, reward_, horizon_, setting_);
  out.structure_means_ = structure_means();
  return out;
}

double draw_reward(const RewardModel& model, double mean, std::uint64_t key, ArmId arm,
                   std::uint64_t draw_index) {
  if (model.kind == RewardKind::Bernoulli) {
    if (mean < 0.0 || mean > 1.0) throw InvalidInstance("Bernoulli arm mean outside [0, 1]");
    return counter_uniform(key, arm, draw_index) < mean ? 1.0 : 0.0;
  }
  // Box-Muller on two counter-based uniforms
  const double u1 = counter_uniform(key, arm, 2 * draw_index);
  const double u2 = counter_uniform(key, arm, 2 * draw_index + 1);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + model.noise_sd * z;
}

double RewardStream::draw(const BanditInstance& instance, ArmId arm) {
  if (arm >= instance.num_arms()) throw InvalidParameter("draw: arm index out of range");
  if (arm >= counters_.size()) counters_.resize(std::max<std::size_t>(arm + 1, counters_.size() * 2), 0);
  return draw_reward(instance.reward_model(), instance.means()[arm], seed_, arm, counters_[arm]++);
}

std::vector<double> ArrivalStream::means() const {
  if (horizon == 0) throw InvalidParameter("arrival stream horizon must be positive");
  return sample_means(sampler, static_cast<std::size_t>(horizon), seed);
}

std::vector<double> optimal_mean_prefix(std::span<const double> means) {
  std::vector<double> out(means.begin(), means.end());
  for (std::size_t t = 1; t < out.size(); ++t) out[t] = std::max(out[t], out[t - 1]);
  return out;
}

}  // namespace simarms
