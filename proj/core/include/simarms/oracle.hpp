#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simarms/env.hpp"

namespace simarms {

/// Suboptimality gaps of a fixed mean vector.
struct GapProfile {
  std::vector<double> gaps;  ///< Delta_i = mu(i*) - mu(i)
  double delta_min = 0.0;    ///< smallest positive Delta_i (0 without suboptimal arms)
  double delta_max = 0.0;
  /// Smallest pairwise mean difference among arms within 2 epsilon of the
  /// optimum (optimum included); +inf when that set is a single arm.
  double delta_2eps = 0.0;
  double delta_min_T = 0.0;  ///< smallest pairwise mean difference over all arms
  double delta_max_T = 0.0;  ///< largest pairwise mean difference over all arms
};

GapProfile gap_profile(std::span<const double> means, double epsilon);

/// Default ratio Delta_min / epsilon above which epsilon counts as much
/// smaller than Delta_min in the C1 case split.
inline constexpr double kC1RatioThreshold = 10.0;

/// True when the first (max{epsilon, Delta_min}) branch of C1 applies.
bool c1_first_case(double epsilon, double delta_min, double ratio_threshold = kC1RatioThreshold);

/// Instance constant of the stationary regret bounds.
double c1_constant(std::size_t gamma, double epsilon, double delta_min, double delta_max,
                   double ratio_threshold = kC1RatioThreshold);

enum class BoundKind {
  DoubleGapFree,               ///< Double-UCB, gap-free
  DoubleGapDependent,          ///< Double-UCB, gap-dependent
  ConservativeGapDependent,    ///< Conservative-UCB
  ConservativeKnownGraph,      ///< Conservative-UCB with known graph
  UcbN,                        ///< UCB-N on similarity graphs
  DoubleBallooning,            ///< Double-UCB-BL upper bound
  DoubleBallooningLower,       ///< Double-UCB-BL lower bound B epsilon / 2
  ConservativeBallooning,      ///< Conservative-UCB-BL
  ConservativeBallooningGap,   ///< Conservative-UCB-BL, gap-dependent
  UDoubleBallooning,           ///< U-Double-UCB
  UConservativeBallooning,     ///< U-Conservative-UCB
};

std::string_view to_string(BoundKind kind);
std::optional<BoundKind> parse_bound_kind(std::string_view name);

/// Inputs of the bound formulas. Each bound names the fields it needs.
struct BoundParams {
  std::optional<double> epsilon;
  std::optional<double> c1;
  std::optional<double> delta_max;
  std::optional<double> delta_2eps;
  std::optional<double> inverse_gap_sum;  ///< max over independent sets of sum 1/Delta_i
  std::optional<double> alpha_sq_mean;    ///< E[alpha(G_T)^2]
  std::optional<double> delta_max_sq_mean;///< E[(Delta_max^T)^2]
  std::optional<double> expected_m;       ///< E[M]
  std::optional<double> alpha;            ///< alpha(G_T)
  std::optional<double> delta_max_T;
  std::optional<double> delta_min_T;
  std::optional<double> h;                ///< number of optimum changes H
  std::optional<double> b;                ///< expected B
  std::optional<double> tau;              ///< refresh period; defaults to ceil(sqrt(T))
};

/// Fields of BoundParams the given bound requires.
std::vector<std::string_view> required_params(BoundKind kind);

/// The bound at horizon T (with delta = 1/T). Throws InvalidParameter naming
/// every missing field.
double bound_value(BoundKind kind, const BoundParams& params, double horizon);

/// T -> bound(T) with validated parameters.
std::function<double(double)> bound_curve(BoundKind kind, BoundParams params);

/// Writes "T,bound" rows for each horizon.
void write_bound_csv(std::ostream& out, const std::function<double(double)>& curve,
                     std::span<const std::uint64_t> horizons);

/// max over independent dominating sets I of some N_i with i in N_{i*} of the
/// sum of 1/Delta_j over j in I other than i*. Zero-gap arms are skipped.
double max_inverse_gap_sum(std::span<const double> means, double epsilon);

/// Instance parameters of the stationary bounds: epsilon, C1 (with gamma of
/// the similarity graph), Delta_max, Delta_2eps and the inverse gap sum.
BoundParams stationary_bound_params(std::span<const double> means, double epsilon,
                                    double ratio_threshold = kC1RatioThreshold);

/// Per-stream counts of one arrival sequence.
struct BallooningCounts {
  std::uint64_t m = 0;  ///< arrivals within 2 epsilon of the running optimum
  std::uint64_t h = 0;  ///< rounds whose arrival attains the running optimum
  std::uint64_t b = 0;  ///< arrivals with gap in (epsilon/2, epsilon)
};

BallooningCounts count_ballooning_stats(std::span<const double> arrival_means, double epsilon);

/// Counts over the prefixes a_1..a_t for each t in `rounds` (increasing, each
/// at most the stream length).
std::vector<BallooningCounts> count_ballooning_prefixes(std::span<const double> arrival_means, double epsilon,
                                                        std::span<const std::uint64_t> rounds);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct BallooningStats {
  Estimate m;
  Estimate h;
  Estimate b;
  std::size_t streams = 0;
};

/// Monte-Carlo expectations of M, H and B over `n_mc` independent arrival
/// streams of length T; stream r uses seed derive_seed(seed, r).
BallooningStats estimate_ballooning_stats(const MeanSampler& sampler, std::uint64_t horizon, double epsilon,
                                          std::size_t n_mc, std::uint64_t seed);

struct GraphMoments {
  Estimate alpha_sq;      ///< E[alpha(G_T)^2]
  Estimate delta_max_sq;  ///< E[(Delta_max^T)^2]
};

GraphMoments estimate_graph_moments(const MeanSampler& sampler, std::uint64_t horizon, double epsilon,
                                    std::size_t n_mc, std::uint64_t seed);

/// B >= (1 - epsilon) epsilon (T - 1) / 2 for U(0, 1) means.
double uniform_b_lower_bound(double epsilon, std::uint64_t horizon);
/// B >= 3 epsilon^2 (1 - epsilon)^2 (T - 1) / 4 for half-triangle means.
double half_triangle_b_lower_bound(double epsilon, std::uint64_t horizon);

/// alpha(G_T) exceeds this with probability at most 2/T^2 for N(0, 1) means.
double gaussian_independence_threshold(std::uint64_t horizon, double epsilon);

}  // namespace simarms
