#include "simarms/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ranges>

#include "simarms/errors.hpp"

namespace simarms {

namespace {

constexpr std::array<std::string_view, 8> kPolicyNames = {
    "double-ucb",    "conservative-ucb",    "conservative-ucb-graph", "ucb-n",
    "double-ucb-bl", "conservative-ucb-bl", "u-double-ucb",           "u-conservative-ucb",
};

ArmId argmax_upper(const PolicyState& s, std::span<const ArmId> arms) {
  return argmax_lowest_id(arms, [&](ArmId a) { return s.ucb(a); });
}

ArmId argmax_lower(const PolicyState& s, std::span<const ArmId> arms) {
  return argmax_lowest_id(arms, [&](ArmId a) { return s.lcb(a); });
}

}  // namespace

std::string_view to_string(PolicyKind kind) { return kPolicyNames[static_cast<std::size_t>(kind)]; }

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (std::size_t i = 0; i < kPolicyNames.size(); ++i) {
    if (kPolicyNames[i] == name) return static_cast<PolicyKind>(i);
  }
  return std::nullopt;
}

std::span<const std::string_view> policy_names() { return kPolicyNames; }

Setting setting_of(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::DoubleUcb:
    case PolicyKind::ConservativeUcb:
    case PolicyKind::ConservativeUcbGraph:
    case PolicyKind::UcbN:
      return Setting::Stationary;
    default:
      return Setting::Ballooning;
  }
}

double default_delta(std::uint64_t horizon) { return 1.0 / static_cast<double>(std::max<std::uint64_t>(horizon, 2)); }

std::uint64_t default_tau(std::uint64_t horizon) {
  auto tau = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(horizon))));
  while (tau * tau < horizon) ++tau;
  while (tau > 1 && (tau - 1) * (tau - 1) >= horizon) --tau;
  return std::max<std::uint64_t>(tau, 1);
}

// ---------------------------------------------------------------------------

UcbNPolicy::UcbNPolicy(std::size_t num_arms, double delta) : Policy(delta, num_arms) {
  if (num_arms == 0) throw InvalidParameter("ucb-n needs at least one arm");
}

ArmId UcbNPolicy::select(std::uint64_t) {
  const std::size_t k = state_.num_arms();
  ArmId best = 0;
  double best_value = state_.ucb(0);
  for (ArmId a = 1; a < k; ++a) {
    const double v = state_.ucb(a);
    if (v > best_value) {
      best = a;
      best_value = v;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

DoubleUcbPolicy::DoubleUcbPolicy(std::size_t num_arms, double delta, Inner inner)
    : Policy(delta, num_arms), inner_(inner) {
  if (num_arms == 0) throw InvalidParameter("double-ucb needs at least one arm");
}

ArmId DoubleUcbPolicy::select(std::uint64_t) {
  if (!init_done_) {
    while (cursor_ < state_.num_arms() && state_.observed(static_cast<ArmId>(cursor_))) ++cursor_;
    if (cursor_ < state_.num_arms()) {
      const auto arm = static_cast<ArmId>(cursor_);
      independent_.push_back(arm);
      pending_ = arm;
      return arm;
    }
    init_done_ = true;
  }
  const ArmId j = argmax_upper(state_, independent_);
  const auto k = static_cast<std::size_t>(std::find(independent_.begin(), independent_.end(), j) -
                                          independent_.begin());
  const auto& nbhd = revealed_[k];
  return inner_ == Inner::Upper ? argmax_upper(state_, nbhd) : argmax_lower(state_, nbhd);
}

void DoubleUcbPolicy::observe(const ObservationBatch& batch) {
  Policy::observe(batch);
  if (pending_ && *pending_ == batch.pulled) {
    std::vector<ArmId> ids;
    ids.reserve(batch.observed.size());
    for (const Observation& o : batch.observed) ids.push_back(o.arm);
    std::sort(ids.begin(), ids.end());
    revealed_.push_back(std::move(ids));
    pending_.reset();
  }
}

// ---------------------------------------------------------------------------

ArmId conservative_graph_select(const SimilarityGraph& graph, const PolicyState& state, ArmId j) {
  const SortedRange nj = graph.neighborhood_range(j);
  if (graph.is_complete(nj)) return argmax_lower(state, graph.ids_in(nj));
  const auto [low, high] = graph.select_independent_pair(j);
  const std::array<ArmId, 2> pair{low, high};
  const ArmId j_prime = argmax_upper(state, pair);
  const SortedRange restricted = intersect(graph.neighborhood_range(j_prime), nj);
  return argmax_lower(state, graph.ids_in(restricted));
}

ConservativeUcbGraphPolicy::ConservativeUcbGraphPolicy(const SimilarityGraph& graph, double delta)
    : Policy(delta, graph.size()), graph_(graph) {
  if (graph.size() == 0) throw InvalidParameter("conservative-ucb-graph needs at least one arm");
}

ArmId ConservativeUcbGraphPolicy::select(std::uint64_t) {
  if (!init_done_) {
    while (cursor_ < state_.num_arms() && state_.observed(static_cast<ArmId>(cursor_))) ++cursor_;
    if (cursor_ < state_.num_arms()) {
      const auto arm = static_cast<ArmId>(cursor_);
      independent_.push_back(arm);
      return arm;
    }
    init_done_ = true;
  }
  const ArmId j = argmax_upper(state_, independent_);
  return conservative_graph_select(graph_, state_, j);
}

// ---------------------------------------------------------------------------

BallooningPolicy::BallooningPolicy(const SimilarityGraph& graph, double delta, Inner inner)
    : Policy(delta), graph_(graph), inner_(inner) {}

bool BallooningPolicy::covered_by_independent_set(double mean) const {
  auto it = std::lower_bound(independent_means_.begin(), independent_means_.end(), mean);
  if (it != independent_means_.end() && graph_.similar(*it, mean)) return true;
  return it != independent_means_.begin() && graph_.similar(*std::prev(it), mean);
}

void BallooningPolicy::on_arrival(ArmId arm) {
  newest_ = arm;
  state_.ensure_arms(static_cast<std::size_t>(arm) + 1);
  const double m = graph_.mean(arm);
  if (!covered_by_independent_set(m)) {
    independent_.push_back(arm);
    independent_means_.insert(std::upper_bound(independent_means_.begin(), independent_means_.end(), m), m);
  }
}

ArmId BallooningPolicy::select(std::uint64_t) {
  if (independent_.empty()) return newest_;
  const ArmId j = argmax_upper(state_, independent_);
  if (inner_ == Inner::Upper) return argmax_upper(state_, graph_.ids_in(graph_.neighborhood_range(j)));
  return conservative_graph_select(graph_, state_, j);
}

// ---------------------------------------------------------------------------

void LearnedAdjacency::ensure(std::size_t count) {
  if (count <= last_batch_.size()) return;
  const std::size_t grown = std::max(count, last_batch_.size() * 2);
  last_batch_.resize(grown);
  extra_.resize(grown);
  last_pull_round_.resize(grown, 0);
}

void LearnedAdjacency::record(const ObservationBatch& batch, std::uint64_t arrival_round_of_pulled) {
  const ArmId p = batch.pulled;
  std::size_t needed = static_cast<std::size_t>(p) + 1;
  for (const Observation& o : batch.observed) needed = std::max<std::size_t>(needed, o.arm + 1);
  ensure(needed);

  const bool first_pull = last_pull_round_[p] == 0;
  if (first_pull) {
    for (const Observation& o : batch.observed) {
      const ArmId j = o.arm;
      // j's latest batch predates p's arrival, so it cannot contain p
      if (j != p && last_pull_round_[j] > 0 && last_pull_round_[j] < arrival_round_of_pulled) {
        extra_[j].push_back(p);
      }
    }
  }
  auto& ids = last_batch_[p];
  ids.clear();
  ids.reserve(batch.observed.size());
  for (const Observation& o : batch.observed) ids.push_back(o.arm);
  extra_[p].clear();
  last_pull_round_[p] = std::max<std::uint64_t>(batch.round, 1);
}

std::vector<ArmId> LearnedAdjacency::neighbors_of_pulled(ArmId arm) const {
  std::vector<ArmId> out;
  if (!pulled(arm)) return out;
  for_each_neighbor_of_pulled(arm, [&](ArmId j) { out.push_back(j); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ArmId> LearnedAdjacency::neighbors(ArmId arm) const {
  std::vector<ArmId> out = neighbors_of_pulled(arm);
  for (std::size_t p = 0; p < last_batch_.size(); ++p) {
    if (last_pull_round_[p] == 0) continue;
    const auto& b = last_batch_[p];
    if (std::find(b.begin(), b.end(), arm) != b.end()) out.push_back(static_cast<ArmId>(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

UnknownGraphPolicy::UnknownGraphPolicy(std::uint64_t tau, double delta, Inner inner)
    : Policy(delta), tau_(tau), inner_(inner) {
  if (tau < 1) throw InvalidParameter("tau must be a positive integer");
}

void UnknownGraphPolicy::on_arrival(ArmId arm) {
  newest_ = arm;
  state_.ensure_arms(static_cast<std::size_t>(arm) + 1);
  if (seen_epoch_.size() <= arm) seen_epoch_.resize(std::max<std::size_t>(arm + 1, seen_epoch_.size() * 2), 0);
}

ArmId UnknownGraphPolicy::select(std::uint64_t round) {
  if (round <= tau_) return newest_;
  if (!refreshing_ && (round - 1) % tau_ == 0) {
    refreshing_ = true;
    ++epoch_;
    queue_.assign(independent_.begin(), independent_.end());
    queue_pos_ = 0;
    target_ = static_cast<std::size_t>(round - 1);
    cursor_ = 0;
  }
  if (refreshing_) {
    if (queue_pos_ < queue_.size()) return queue_[queue_pos_++];
    while (cursor_ < target_ && seen_epoch_[cursor_] == epoch_) ++cursor_;
    if (cursor_ < target_) {
      const auto arm = static_cast<ArmId>(cursor_);
      independent_.push_back(arm);
      return arm;
    }
    refreshing_ = false;
    ++refreshes_completed_;
  }
  return steady_select();
}

ArmId UnknownGraphPolicy::steady_select() {
  if (independent_.empty()) return newest_;
  const ArmId j = argmax_upper(state_, independent_);
  bool found = false;
  ArmId best = j;
  double best_value = -kInf;
  learned_.for_each_neighbor_of_pulled(j, [&](ArmId a) {
    const double v = inner_ == Inner::Upper ? state_.ucb(a) : state_.lcb(a);
    if (!found || v > best_value || (v == best_value && a < best)) {
      found = true;
      best = a;
      best_value = v;
    }
  });
  return best;
}

void UnknownGraphPolicy::observe(const ObservationBatch& batch) {
  Policy::observe(batch);
  learned_.record(batch, static_cast<std::uint64_t>(batch.pulled) + 1);
  if (refreshing_) {
    for (const Observation& o : batch.observed) {
      if (o.arm < seen_epoch_.size()) seen_epoch_[o.arm] = epoch_;
    }
  }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Policy> make_policy(PolicyKind kind, const PolicyContext& ctx) {
  const double delta = ctx.delta > 0.0 ? ctx.delta : default_delta(ctx.horizon);
  auto need_graph = [&]() -> const SimilarityGraph& {
    if (ctx.graph == nullptr) {
      throw ConfigurationError(std::string(to_string(kind)) + " requires the known feedback graph");
    }
    return *ctx.graph;
  };
  switch (kind) {
    case PolicyKind::UcbN:
      return std::make_unique<UcbNPolicy>(ctx.num_arms, delta);
    case PolicyKind::DoubleUcb:
      return std::make_unique<DoubleUcbPolicy>(ctx.num_arms, delta, DoubleUcbPolicy::Inner::Upper);
    case PolicyKind::ConservativeUcb:
      return std::make_unique<DoubleUcbPolicy>(ctx.num_arms, delta, DoubleUcbPolicy::Inner::Lower);
    case PolicyKind::ConservativeUcbGraph:
      return std::make_unique<ConservativeUcbGraphPolicy>(need_graph(), delta);
    case PolicyKind::DoubleUcbBl:
      return std::make_unique<BallooningPolicy>(need_graph(), delta, BallooningPolicy::Inner::Upper);
    case PolicyKind::ConservativeUcbBl:
      return std::make_unique<BallooningPolicy>(need_graph(), delta, BallooningPolicy::Inner::Lower);
    case PolicyKind::UDoubleUcb:
    case PolicyKind::UConservativeUcb: {
      const std::uint64_t tau = ctx.tau > 0 ? ctx.tau : default_tau(ctx.horizon);
      const auto inner =
          kind == PolicyKind::UDoubleUcb ? UnknownGraphPolicy::Inner::Upper : UnknownGraphPolicy::Inner::Lower;
      return std::make_unique<UnknownGraphPolicy>(tau, delta, inner);
    }
  }
  throw ConfigurationError("unknown policy kind");
}

std::unique_ptr<Policy> make_policy(std::string_view name, const PolicyContext& ctx) {
  const auto kind = parse_policy_kind(name);
  if (!kind) throw ConfigurationError("unknown policy name '" + std::string(name) + "'");
  return make_policy(*kind, ctx);
}

}  // namespace simarms
