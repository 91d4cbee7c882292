#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simarms/policy_state.hpp"
#include "simarms/simgraph.hpp"

namespace simarms {

enum class PolicyKind {
  DoubleUcb,
  ConservativeUcb,
  ConservativeUcbGraph,
  UcbN,
  DoubleUcbBl,
  ConservativeUcbBl,
  UDoubleUcb,
  UConservativeUcb,
};

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);
/// Every accepted policy name, in declaration order.
std::span<const std::string_view> policy_names();
Setting setting_of(PolicyKind kind);

/// What a policy is allowed to know about the environment.
struct PolicyContext {
  std::size_t num_arms = 0;  ///< stationary arm count
  std::uint64_t horizon = 0;
  double delta = 0.0;        ///< 0 selects the default 1/T
  std::uint64_t tau = 0;     ///< refresh period of the U- variants, 0 selects ceil(sqrt(T))
  /// Structural oracle for known-graph policies. Stationary policies that
  /// only learn neighborhoods by observation ignore it.
  const SimilarityGraph* graph = nullptr;
};

double default_delta(std::uint64_t horizon);
std::uint64_t default_tau(std::uint64_t horizon);

/// Common interface. A round is: on_arrival (ballooning only), select, then
/// observe with the batch generated for the selected arm.
class Policy {
 public:
  explicit Policy(double delta, std::size_t num_arms = 0) : state_(delta, num_arms) {}
  virtual ~Policy() = default;
  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  virtual PolicyKind kind() const noexcept = 0;
  virtual void on_arrival(ArmId /*arm*/) {}
  virtual ArmId select(std::uint64_t round) = 0;
  virtual void observe(const ObservationBatch& batch) { state_.record(batch); }

  const PolicyState& state() const noexcept { return state_; }
  /// The maintained independent set I (empty for UCB-N).
  std::span<const ArmId> independent_set() const noexcept { return independent_; }

 protected:
  PolicyState state_;
  std::vector<ArmId> independent_;
};

/// UCB-N: global argmax of the upper index over all arms.
class UcbNPolicy final : public Policy {
 public:
  UcbNPolicy(std::size_t num_arms, double delta);
  PolicyKind kind() const noexcept override { return PolicyKind::UcbN; }
  ArmId select(std::uint64_t round) override;
};

/// Double-UCB and Conservative-UCB (stationary). First pulls unobserved arms
/// in id order, collecting them into I, until every arm has been observed;
/// then picks j_t in I by upper index and i_t in N_{j_t} by the upper
/// (double) or lower (conservative) index. Neighborhoods are learnt from the
/// observation batches of the independent-set phase.
class DoubleUcbPolicy final : public Policy {
 public:
  enum class Inner { Upper, Lower };
  DoubleUcbPolicy(std::size_t num_arms, double delta, Inner inner);
  PolicyKind kind() const noexcept override {
    return inner_ == Inner::Upper ? PolicyKind::DoubleUcb : PolicyKind::ConservativeUcb;
  }
  ArmId select(std::uint64_t round) override;
  void observe(const ObservationBatch& batch) override;

  bool in_initial_phase() const noexcept { return !init_done_; }
  /// The revealed neighborhood of the k-th member of I.
  std::span<const ArmId> revealed_neighborhood(std::size_t k) const { return revealed_.at(k); }

 private:
  Inner inner_;
  bool init_done_ = false;
  std::size_t cursor_ = 0;
  std::optional<ArmId> pending_;
  std::vector<std::vector<ArmId>> revealed_;
};

/// Conservative selection inside N_j with a known graph: lower index over
/// N_j when it is a clique, otherwise over N_{j'} ∩ N_j where j' is the
/// upper-index winner of the extremal independent pair of N_j.
ArmId conservative_graph_select(const SimilarityGraph& graph, const PolicyState& state, ArmId j);

/// Conservative-UCB with known graph (stationary).
class ConservativeUcbGraphPolicy final : public Policy {
 public:
  ConservativeUcbGraphPolicy(const SimilarityGraph& graph, double delta);
  PolicyKind kind() const noexcept override { return PolicyKind::ConservativeUcbGraph; }
  ArmId select(std::uint64_t round) override;

 private:
  const SimilarityGraph& graph_;
  std::size_t cursor_ = 0;
  bool init_done_ = false;
};

/// Double-UCB-BL and Conservative-UCB-BL. On arrival, a_t joins I unless it
/// is adjacent to a member of I; selection is the stationary rule of
/// Double-UCB, or of Conservative-UCB with known graph.
class BallooningPolicy final : public Policy {
 public:
  enum class Inner { Upper, Lower };
  BallooningPolicy(const SimilarityGraph& graph, double delta, Inner inner);
  PolicyKind kind() const noexcept override {
    return inner_ == Inner::Upper ? PolicyKind::DoubleUcbBl : PolicyKind::ConservativeUcbBl;
  }
  void on_arrival(ArmId arm) override;
  ArmId select(std::uint64_t round) override;

 private:
  bool covered_by_independent_set(double mean) const;

  const SimilarityGraph& graph_;
  Inner inner_;
  std::vector<double> independent_means_;  // sorted
  ArmId newest_ = 0;
};

/// Neighborhood knowledge assembled purely from observation batches: an
/// observation of j while pulling i shows j ∈ N_i and i ∈ N_j.
class LearnedAdjacency {
 public:
  void record(const ObservationBatch& batch, std::uint64_t arrival_round_of_pulled);
  /// Learned closed neighborhood of an arm that has been pulled at least once.
  std::vector<ArmId> neighbors_of_pulled(ArmId arm) const;
  /// Learned neighborhood of any arm (linear scan; intended for checks).
  std::vector<ArmId> neighbors(ArmId arm) const;
  bool pulled(ArmId arm) const noexcept { return arm < last_batch_.size() && last_pull_round_[arm] > 0; }

  template <typename Visit>
  void for_each_neighbor_of_pulled(ArmId arm, Visit&& visit) const {
    for (ArmId j : last_batch_[arm]) visit(j);
    for (ArmId j : extra_[arm]) visit(j);
  }

 private:
  void ensure(std::size_t count);

  // Batch of the latest pull of each arm: its full neighborhood at that time.
  std::vector<std::vector<ArmId>> last_batch_;
  // Arms that arrived after that pull and revealed the edge by being pulled.
  std::vector<std::vector<ArmId>> extra_;
  std::vector<std::uint64_t> last_pull_round_;
};

/// U-Double-UCB and U-Conservative-UCB: ballooning without graph knowledge.
/// Rounds t <= tau pull the newest arm. When (t-1) mod tau == 0 a refresh
/// phase starts: each member of I is pulled once, then the lowest-id arm among
/// the first t-1 arrivals not yet observed during this phase is pulled and
/// added to I, until all of them have been observed in the phase. Other
/// rounds run the double/conservative rule over learned neighborhoods.
class UnknownGraphPolicy final : public Policy {
 public:
  enum class Inner { Upper, Lower };
  UnknownGraphPolicy(std::uint64_t tau, double delta, Inner inner);
  PolicyKind kind() const noexcept override {
    return inner_ == Inner::Upper ? PolicyKind::UDoubleUcb : PolicyKind::UConservativeUcb;
  }
  void on_arrival(ArmId arm) override;
  ArmId select(std::uint64_t round) override;
  void observe(const ObservationBatch& batch) override;

  const LearnedAdjacency& learned() const noexcept { return learned_; }
  bool in_refresh() const noexcept { return refreshing_; }
  /// Number of arms (the first t-1 arrivals) covered by the latest refresh.
  std::size_t refresh_target() const noexcept { return target_; }
  std::uint64_t refreshes_completed() const noexcept { return refreshes_completed_; }

 private:
  ArmId steady_select();

  std::uint64_t tau_;
  Inner inner_;
  LearnedAdjacency learned_;
  ArmId newest_ = 0;
  bool refreshing_ = false;
  std::size_t queue_pos_ = 0;
  std::vector<ArmId> queue_;
  std::size_t target_ = 0;
  std::size_t cursor_ = 0;
  std::uint64_t epoch_ = 0;
  std::vector<std::uint64_t> seen_epoch_;
  std::uint64_t refreshes_completed_ = 0;
};

/// Builds a policy by name. Throws ConfigurationError for unknown names and
/// for known-graph policies constructed without a graph.
std::unique_ptr<Policy> make_policy(PolicyKind kind, const PolicyContext& ctx);
std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyContext& ctx);

}  // namespace simarms
