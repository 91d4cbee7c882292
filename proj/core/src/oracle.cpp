#include "simarms/oracle.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "simarms/errors.hpp"
#include "simarms/graph_stats.hpp"
#include "simarms/rng.hpp"

namespace simarms {

namespace {

constexpr double kInfinity() { return std::numeric_limits<double>::infinity(); }
constexpr double kBandSlack = 1e-12;

constexpr std::array<std::string_view, 11> kBoundNames = {
    "double-gap-free",        "double-gap-dependent",     "conservative-gap-dependent",
    "conservative-known-graph", "ucb-n",                  "double-bl",
    "double-bl-lower",        "conservative-bl",          "conservative-bl-gap",
    "u-double-bl",            "u-conservative-bl",
};

Estimate summarize(const std::vector<double>& xs) {
  Estimate e;
  const auto n = static_cast<double>(xs.size());
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return e;
}

}  // namespace

GapProfile gap_profile(std::span<const double> means, double epsilon) {
  if (means.empty()) throw InvalidParameter("gap_profile: need at least one arm");
  if (!(epsilon > 0.0)) throw InvalidParameter("gap_profile: epsilon must be positive");
  GapProfile p;
  const double best = *std::max_element(means.begin(), means.end());
  p.gaps.reserve(means.size());
  p.delta_min = kInfinity();
  for (double m : means) {
    const double g = best - m;
    p.gaps.push_back(g);
    p.delta_max = std::max(p.delta_max, g);
    if (g > 0.0) p.delta_min = std::min(p.delta_min, g);
  }
  if (std::isinf(p.delta_min)) p.delta_min = 0.0;

  std::vector<double> sorted(means.begin(), means.end());
  std::sort(sorted.begin(), sorted.end());
  p.delta_max_T = sorted.back() - sorted.front();
  p.delta_min_T = sorted.size() > 1 ? kInfinity() : 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) p.delta_min_T = std::min(p.delta_min_T, sorted[i] - sorted[i - 1]);

  // arms with best - mu < 2 epsilon form a suffix of the sorted means; a gap
  // within rounding of 2 epsilon (0.6 - 0.4 against 0.2) counts as equal
  const double band_width = 2.0 * epsilon - kBandSlack * std::max(1.0, std::abs(best));
  auto band = std::find_if(sorted.begin(), sorted.end(), [&](double m) { return best - m < band_width; });
  p.delta_2eps = kInfinity();
  for (auto it = band; it != sorted.end() && std::next(it) != sorted.end(); ++it) {
    p.delta_2eps = std::min(p.delta_2eps, *std::next(it) - *it);
  }
  return p;
}

bool c1_first_case(double epsilon, double delta_min, double ratio_threshold) {
  return delta_min < epsilon || delta_min / epsilon >= ratio_threshold;
}

double c1_constant(std::size_t gamma, double epsilon, double delta_min, double delta_max,
                   double ratio_threshold) {
  if (gamma < 1) throw InvalidParameter("c1: gamma must be at least 1");
  if (!(epsilon > 0.0)) throw InvalidParameter("c1: epsilon must be positive");
  if (!(delta_min >= 0.0) || !(delta_max >= delta_min)) {
    throw InvalidParameter("c1: need 0 <= delta_min <= delta_max");
  }
  const double wide = std::max(epsilon, delta_min);
  const double log_part = 4.0 * (std::log(2.0 * static_cast<double>(gamma)) + 1.0);
  const double pi_part = 4.0 * std::numbers::pi * std::numbers::pi / (3.0 * wide);
  return c1_first_case(epsilon, delta_min, ratio_threshold) ? log_part / wide + pi_part
                                                            : log_part / epsilon + pi_part;
}

std::string_view to_string(BoundKind kind) { return kBoundNames[static_cast<std::size_t>(kind)]; }

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  for (std::size_t i = 0; i < kBoundNames.size(); ++i) {
    if (kBoundNames[i] == name) return static_cast<BoundKind>(i);
  }
  return std::nullopt;
}

std::vector<std::string_view> required_params(BoundKind kind) {
  switch (kind) {
    case BoundKind::DoubleGapFree:
    case BoundKind::UcbN:
    case BoundKind::ConservativeKnownGraph:
      return {"epsilon", "c1", "delta_max"};
    case BoundKind::DoubleGapDependent:
      return {"epsilon", "c1", "delta_max", "inverse_gap_sum"};
    case BoundKind::ConservativeGapDependent:
      return {"epsilon", "c1", "delta_max", "delta_2eps"};
    case BoundKind::DoubleBallooning:
    case BoundKind::UDoubleBallooning:
      return {"epsilon", "alpha_sq_mean", "delta_max_sq_mean", "expected_m"};
    case BoundKind::DoubleBallooningLower:
      return {"epsilon", "b"};
    case BoundKind::ConservativeBallooning:
      return {"epsilon", "alpha_sq_mean", "delta_max_sq_mean"};
    case BoundKind::ConservativeBallooningGap:
      return {"epsilon", "alpha", "delta_max_T", "delta_min_T", "h"};
    case BoundKind::UConservativeBallooning:
      return {"epsilon", "alpha_sq_mean", "delta_max_sq_mean", "alpha", "delta_max_T", "h"};
  }
  return {};
}

namespace {

const std::optional<double>& field(const BoundParams& p, std::string_view name) {
  if (name == "epsilon") return p.epsilon;
  if (name == "c1") return p.c1;
  if (name == "delta_max") return p.delta_max;
  if (name == "delta_2eps") return p.delta_2eps;
  if (name == "inverse_gap_sum") return p.inverse_gap_sum;
  if (name == "alpha_sq_mean") return p.alpha_sq_mean;
  if (name == "delta_max_sq_mean") return p.delta_max_sq_mean;
  if (name == "expected_m") return p.expected_m;
  if (name == "alpha") return p.alpha;
  if (name == "delta_max_T") return p.delta_max_T;
  if (name == "delta_min_T") return p.delta_min_T;
  if (name == "h") return p.h;
  if (name == "b") return p.b;
  return p.tau;
}

void validate(BoundKind kind, const BoundParams& params) {
  std::string missing;
  for (auto name : required_params(kind)) {
    if (!field(params, name)) missing += (missing.empty() ? "" : ", ") + std::string(name);
  }
  if (!missing.empty()) {
    throw InvalidParameter("bound '" + std::string(to_string(kind)) + "' is missing: " + missing);
  }
  const double eps = *params.epsilon;
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidParameter("bound: epsilon must be finite and non-negative");
  const bool divides_by_eps = kind != BoundKind::DoubleGapFree && kind != BoundKind::DoubleGapDependent &&
                              kind != BoundKind::ConservativeGapDependent && kind != BoundKind::UcbN &&
                              kind != BoundKind::DoubleBallooningLower;
  if (divides_by_eps && eps == 0.0) {
    throw InvalidParameter("bound '" + std::string(to_string(kind)) + "' needs a positive epsilon");
  }
}

double tau_at(const BoundParams& p, double horizon) {
  return p.tau ? *p.tau : std::ceil(std::sqrt(horizon));
}

double evaluate(BoundKind kind, const BoundParams& p, double horizon) {
  const double T = horizon;
  const double L = std::log(std::numbers::sqrt2 * T);
  const double eps = *p.epsilon;
  auto stationary_tail = [&] { return *p.c1 * L + *p.delta_max; };
  auto spread_term = [&] { return std::sqrt(*p.alpha_sq_mean * *p.delta_max_sq_mean) * (4.0 * L / (eps * eps) + 1.0); };
  auto double_bl = [&] { return spread_term() + 4.0 * std::sqrt(2.0 * T * *p.expected_m * L) + 2.0 * eps; };
  auto cons_bl = [&] {
    const double logT = std::log(T);
    return spread_term() + 8.0 * std::sqrt(2.0 * T * logT) * L + 16.0 * L * L / eps + 6.0 * eps * logT;
  };

  switch (kind) {
    case BoundKind::DoubleGapFree:
      return 16.0 * std::sqrt(T) * L + stationary_tail() + 4.0 * eps;
    case BoundKind::DoubleGapDependent:
      return 32.0 * L * L * *p.inverse_gap_sum + stationary_tail() + 4.0 * eps;
    case BoundKind::ConservativeGapDependent: {
      const double d = *p.delta_2eps;
      const double head = std::isinf(d) ? 0.0 : 16.0 * eps * L / (d * d);
      return head + stationary_tail() + 4.0 * eps;
    }
    case BoundKind::ConservativeKnownGraph:
      return 8.0 * std::sqrt(T) * L + (*p.c1 + 8.0 / eps) * L + 3.0 * eps + *p.delta_max;
    case BoundKind::UcbN:
      return 16.0 * std::sqrt(T) * L + stationary_tail() + 2.0 * eps;
    case BoundKind::DoubleBallooning:
      return double_bl();
    case BoundKind::DoubleBallooningLower:
      return *p.b * eps / 2.0;
    case BoundKind::ConservativeBallooning:
      return cons_bl();
    case BoundKind::ConservativeBallooningGap: {
      const double dmin = *p.delta_min_T;
      return *p.alpha * *p.delta_max_T * (4.0 * L / (eps * eps) + 1.0) + 16.0 * *p.h * eps * L / (dmin * dmin) +
             4.0 * eps;
    }
    case BoundKind::UDoubleBallooning: {
      const double tau = tau_at(p, T);
      return T / tau * std::sqrt(*p.alpha_sq_mean * *p.delta_max_sq_mean) +
             11.0 * tau * std::log(T) * std::sqrt(*p.delta_max_sq_mean) + double_bl();
    }
    case BoundKind::UConservativeBallooning: {
      const double tau = tau_at(p, T);
      return T / tau * *p.alpha * *p.delta_max_T + tau * *p.h * *p.delta_max_T + cons_bl();
    }
  }
  return 0.0;
}

}  // namespace

double bound_value(BoundKind kind, const BoundParams& params, double horizon) {
  validate(kind, params);
  if (!(horizon >= 1.0)) throw InvalidParameter("bound: horizon must be at least 1");
  return evaluate(kind, params, horizon);
}

std::function<double(double)> bound_curve(BoundKind kind, BoundParams params) {
  validate(kind, params);
  return [kind, params](double horizon) { return bound_value(kind, params, horizon); };
}

void write_bound_csv(std::ostream& out, const std::function<double(double)>& curve,
                     std::span<const std::uint64_t> horizons) {
  out << "T,bound\n";
  char buf[64];
  for (std::uint64_t t : horizons) {
    auto res = std::to_chars(buf, buf + sizeof buf, curve(static_cast<double>(t)), std::chars_format::fixed, 6);
    out << t << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
}

std::vector<BallooningCounts> count_ballooning_prefixes(std::span<const double> arrival_means, double epsilon,
                                                        std::span<const std::uint64_t> rounds) {
  std::vector<BallooningCounts> out;
  out.reserve(rounds.size());
  BallooningCounts c;
  double best = -kInfinity();
  std::uint64_t t = 0;
  for (std::uint64_t target : rounds) {
    if (target < t || target > arrival_means.size()) {
      throw InvalidParameter("count_ballooning_prefixes: rounds must increase within the stream");
    }
    for (; t < target; ++t) {
      const double m = arrival_means[t];
      if (m >= best) {
        ++c.h;
        best = m;
      }
      const double gap = best - m;
      if (gap < 2.0 * epsilon) ++c.m;
      if (gap > epsilon / 2.0 && gap < epsilon) ++c.b;
    }
    out.push_back(c);
  }
  return out;
}

BallooningCounts count_ballooning_stats(std::span<const double> arrival_means, double epsilon) {
  const std::uint64_t all[] = {arrival_means.size()};
  return count_ballooning_prefixes(arrival_means, epsilon, all).front();
}

double max_inverse_gap_sum(std::span<const double> means, double epsilon) {
  if (means.empty()) throw InvalidParameter("max_inverse_gap_sum: need at least one arm");
  const auto graph = SimilarityGraph::build(means, epsilon);
  const double best = *std::max_element(means.begin(), means.end());
  const auto sorted = graph.sorted_means();
  const auto weight = [&](std::size_t pos) { return sorted[pos] < best ? 1.0 / (best - sorted[pos]) : 0.0; };
  // sorted positions whose means lie within epsilon of position p, clipped to r
  const auto cover = [&](std::size_t p, SortedRange r) { return intersect(graph.range_around(sorted[p]), r); };

  double result = 0.0;
  const SortedRange top = graph.range_around(best);
  for (std::size_t i = top.lo; i < top.hi; ++i) {
    const SortedRange r = graph.range_around(sorted[i]);
    for (std::size_t a = r.lo; a < r.hi; ++a) {
      const SortedRange ca = cover(a, r);
      if (ca == r) {
        result = std::max(result, weight(a));
        continue;
      }
      if (ca.lo != r.lo) continue;
      for (std::size_t b = ca.hi; b < r.hi; ++b) {
        const SortedRange cb = cover(b, r);
        if (cb.lo <= ca.hi && cb.hi == r.hi) result = std::max(result, weight(a) + weight(b));
      }
    }
  }
  return result;
}

BoundParams stationary_bound_params(std::span<const double> means, double epsilon, double ratio_threshold) {
  const GapProfile g = gap_profile(means, epsilon);
  const auto graph = SimilarityGraph::build(means, epsilon);
  BoundParams p;
  p.epsilon = epsilon;
  p.c1 = c1_constant(interval_domination_number(graph), epsilon, g.delta_min, g.delta_max, ratio_threshold);
  p.delta_max = g.delta_max;
  p.delta_2eps = g.delta_2eps;
  p.inverse_gap_sum = max_inverse_gap_sum(means, epsilon);
  return p;
}

BallooningStats estimate_ballooning_stats(const MeanSampler& sampler, std::uint64_t horizon, double epsilon,
                                          std::size_t n_mc, std::uint64_t seed) {
  if (n_mc == 0) throw InvalidParameter("estimate_ballooning_stats: need at least one stream");
  std::vector<double> ms, hs, bs;
  for (std::size_t r = 0; r < n_mc; ++r) {
    const auto means = sample_means(sampler, horizon, derive_seed(seed, r));
    const auto c = count_ballooning_stats(means, epsilon);
    ms.push_back(static_cast<double>(c.m));
    hs.push_back(static_cast<double>(c.h));
    bs.push_back(static_cast<double>(c.b));
  }
  return {summarize(ms), summarize(hs), summarize(bs), n_mc};
}

GraphMoments estimate_graph_moments(const MeanSampler& sampler, std::uint64_t horizon, double epsilon,
                                    std::size_t n_mc, std::uint64_t seed) {
  if (n_mc == 0) throw InvalidParameter("estimate_graph_moments: need at least one stream");
  std::vector<double> alpha_sq, spread_sq;
  for (std::size_t r = 0; r < n_mc; ++r) {
    auto means = sample_means(sampler, horizon, derive_seed(seed, r));
    std::sort(means.begin(), means.end());
    double alpha = 1.0;
    double last = means.front();
    for (double m : means) {
      if (m - last >= epsilon) {
        alpha += 1.0;
        last = m;
      }
    }
    const double spread = means.back() - means.front();
    alpha_sq.push_back(alpha * alpha);
    spread_sq.push_back(spread * spread);
  }
  return {summarize(alpha_sq), summarize(spread_sq)};
}

double uniform_b_lower_bound(double epsilon, std::uint64_t horizon) {
  return (1.0 - epsilon) * epsilon / 2.0 * static_cast<double>(horizon - 1);
}

double half_triangle_b_lower_bound(double epsilon, std::uint64_t horizon) {
  const double a = epsilon * (1.0 - epsilon);
  return 3.0 * a * a / 4.0 * static_cast<double>(horizon - 1);
}

double gaussian_independence_threshold(std::uint64_t horizon, double epsilon) {
  return 2.0 * std::sqrt(6.0 * std::log(static_cast<double>(horizon))) / epsilon + 1.0;
}

}  // namespace simarms
