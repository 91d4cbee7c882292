#include "simarms_app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace simarms::app {

namespace {

constexpr std::string_view kKeys[] = {
    "setting", "policies", "T",     "K",   "epsilon",     "reward", "noise_sd",        "sampler",
    "means",   "trials",   "seed",  "tau", "delta",       "out",    "log_dense_until", "log_every",
    "standardize",
};

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

struct Entry {
  std::size_t line;
  std::string value;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {}

  bool has(std::string_view key) const { return entries_.count(key) > 0; }

  template <typename T>
  void integer(std::string_view key, T& out) {
    const Entry* e = find(key);
    if (e && !parse_number(e->value, out)) fail(*e, key, "expected a non-negative integer");
  }

  void real(std::string_view key, double& out) {
    const Entry* e = find(key);
    if (e && (!parse_number(e->value, out) || !std::isfinite(out))) fail(*e, key, "expected a finite number");
  }

  void boolean(std::string_view key, bool& out) {
    const Entry* e = find(key);
    if (!e) return;
    if (e->value == "true") out = true;
    else if (e->value == "false") out = false;
    else fail(*e, key, "expected true or false");
  }

  template <typename Parse, typename T>
  void named(std::string_view key, Parse&& parse, T& out, std::string_view choices) {
    const Entry* e = find(key);
    if (!e) return;
    if (auto v = parse(e->value)) out = *v;
    else fail(*e, key, "expected one of " + std::string(choices));
  }

  void policies(std::vector<PolicyKind>& out) {
    const Entry* e = find("policies");
    if (!e) return;
    for (auto name : split_list(e->value)) {
      if (auto k = parse_policy_kind(name)) out.push_back(*k);
      else fail(*e, "policies", "unknown policy");
    }
  }

  void reals(std::string_view key, std::vector<double>& out) {
    const Entry* e = find(key);
    if (!e) return;
    for (auto item : split_list(e->value)) {
      double v = 0.0;
      if (parse_number(item, v) && std::isfinite(v)) out.push_back(v);
      else fail(*e, key, "expected a comma separated list of numbers");
    }
  }

  void text(std::string_view key, std::string& out) {
    if (const Entry* e = find(key)) out = e->value;
  }

  std::vector<std::string>& diagnostics() { return diagnostics_; }

 private:
  const Entry* find(std::string_view key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }
  void fail(const Entry& e, std::string_view key, const std::string& what) {
    diagnostics_.push_back("line " + std::to_string(e.line) + ": " + std::string(key) + ": " + what + ", got '" +
                           e.value + "'");
  }

  std::map<std::string, Entry, std::less<>> entries_;
  std::vector<std::string> diagnostics_;
};

bool is_unknown_graph(PolicyKind k) { return k == PolicyKind::UDoubleUcb || k == PolicyKind::UConservativeUcb; }

std::vector<std::string> violations_of(const ExperimentConfig& c, const std::set<std::string, std::less<>>* present) {
  std::vector<std::string> v;
  auto missing = [&](std::string_view key) { return present && present->count(key) == 0; };

  if (missing("setting")) v.push_back("setting: required (stationary or ballooning)");
  if (missing("T")) v.push_back("T: required");
  else if (c.horizon == 0) v.push_back("T: must be at least 1");
  if (missing("epsilon")) v.push_back("epsilon: required");
  else if (!(c.epsilon > 0.0)) v.push_back("epsilon: must be positive");
  if (c.policies.empty()) v.push_back("policies: at least one policy is required");

  for (PolicyKind k : c.policies) {
    if (setting_of(k) != c.setting) {
      v.push_back("policies: " + std::string(to_string(k)) + " does not run in the " +
                  (c.setting == Setting::Stationary ? "stationary" : "ballooning") + " setting");
    }
  }
  const bool stationary = c.setting == Setting::Stationary;
  if (stationary && (missing("K") || c.num_arms == 0)) v.push_back("K: required (at least 1) for the stationary setting");
  if (c.standardize && !stationary) v.push_back("standardize: only available in the stationary setting");
  if (c.standardize && stationary && c.num_arms == 1) v.push_back("standardize: needs K >= 2");
  if (c.trials == 0) v.push_back("trials: must be at least 1");
  if (c.delta != 0.0 && !(c.delta > 0.0 && c.delta < 1.0)) v.push_back("delta: must lie in (0, 1)");
  if (c.reward.kind == RewardKind::Gaussian && !(c.reward.noise_sd > 0.0)) v.push_back("noise_sd: must be positive");
  if (c.reward.kind == RewardKind::Bernoulli && c.sampler.kind == SamplerKind::Normal01) {
    v.push_back("sampler: normal means fall outside [0, 1], which bernoulli rewards need");
  }
  if (c.sampler.kind == SamplerKind::FixedList) {
    const std::size_t needed = stationary ? c.num_arms : c.horizon;
    if (c.sampler.fixed.size() < needed) {
      v.push_back("means: " + std::to_string(needed) + " values needed, " + std::to_string(c.sampler.fixed.size()) +
                  " given");
    }
    if (c.reward.kind == RewardKind::Bernoulli &&
        std::any_of(c.sampler.fixed.begin(), c.sampler.fixed.end(), [](double m) { return m < 0.0 || m > 1.0; })) {
      v.push_back("means: bernoulli rewards need every mean in [0, 1]");
    }
  } else if (!c.sampler.fixed.empty()) {
    v.push_back("means: only used with sampler = fixed");
  }
  if (c.log.every == 0) v.push_back("log_every: must be at least 1");
  return v;
}

}  // namespace

std::vector<std::uint64_t> LogSchedule::rounds(std::uint64_t horizon) const {
  std::vector<std::uint64_t> out;
  const std::uint64_t dense = std::min(dense_until, horizon);
  for (std::uint64_t t = 1; t <= dense; ++t) out.push_back(t);
  const std::uint64_t step = std::max<std::uint64_t>(every, 1);
  for (std::uint64_t t = dense + step; t <= horizon; t += step) out.push_back(t);
  if (horizon > 0 && (out.empty() || out.back() != horizon)) out.push_back(horizon);
  return out;
}

ParseError::ParseError(std::vector<std::string> diagnostics)
    : std::runtime_error("config parse error:\n  " + join(diagnostics, "\n  ")), diagnostics_(std::move(diagnostics)) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid config:\n  " + join(violations, "\n  ")), violations_(std::move(violations)) {}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("setting", setting == Setting::Stationary ? "stationary" : "ballooning");
  std::string names;
  for (std::size_t i = 0; i < policies.size(); ++i) names += (i ? "," : "") + std::string(to_string(policies[i]));
  kv.emplace_back("policies", names);
  kv.emplace_back("T", std::to_string(horizon));
  if (setting == Setting::Stationary) kv.emplace_back("K", std::to_string(num_arms));
  kv.emplace_back("epsilon", format_double(epsilon));
  kv.emplace_back("reward", std::string(to_string(reward.kind)));
  if (reward.kind == RewardKind::Gaussian) kv.emplace_back("noise_sd", format_double(reward.noise_sd));
  kv.emplace_back("sampler", std::string(to_string(sampler.kind)));
  if (sampler.kind == SamplerKind::FixedList) {
    std::string list;
    for (std::size_t i = 0; i < sampler.fixed.size(); ++i) list += (i ? "," : "") + format_double(sampler.fixed[i]);
    kv.emplace_back("means", list);
  }
  kv.emplace_back("trials", std::to_string(trials));
  kv.emplace_back("seed", std::to_string(seed));
  if (std::any_of(policies.begin(), policies.end(), is_unknown_graph)) {
    kv.emplace_back("tau", std::to_string(tau > 0 ? tau : default_tau(horizon)));
  }
  kv.emplace_back("delta", format_double(delta > 0.0 ? delta : default_delta(horizon)));
  kv.emplace_back("standardize", standardize ? "true" : "false");
  kv.emplace_back("log_dense_until", std::to_string(log.dense_until));
  kv.emplace_back("log_every", std::to_string(log.every));
  return kv;
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<std::string> diagnostics;
  std::map<std::string, Entry, std::less<>> entries;
  std::set<std::string, std::less<>> present;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      diagnostics.push_back(where + "expected 'key = value', got '" + std::string(line) + "'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      diagnostics.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    if (value.empty()) {
      diagnostics.push_back(where + key + ": empty value");
      continue;
    }
    if (auto it = entries.find(key); it != entries.end()) {
      diagnostics.push_back(where + key + ": already set on line " + std::to_string(it->second.line));
      continue;
    }
    entries.emplace(key, Entry{line_no, value});
    present.insert(key);
  }

  ExperimentConfig c;
  Reader r(std::move(entries));
  r.named("setting", [](std::string_view s) -> std::optional<Setting> {
    if (s == "stationary") return Setting::Stationary;
    if (s == "ballooning") return Setting::Ballooning;
    return std::nullopt;
  }, c.setting, "stationary, ballooning");
  r.policies(c.policies);
  r.integer("T", c.horizon);
  r.integer("K", c.num_arms);
  r.real("epsilon", c.epsilon);
  r.named("reward", parse_reward_kind, c.reward.kind, "bernoulli, gaussian");
  r.real("noise_sd", c.reward.noise_sd);
  r.named("sampler", parse_sampler_kind, c.sampler.kind, "uniform, normal, half-triangle, fixed");
  r.reals("means", c.sampler.fixed);
  r.integer("trials", c.trials);
  r.integer("seed", c.seed);
  r.integer("tau", c.tau);
  r.real("delta", c.delta);
  r.boolean("standardize", c.standardize);
  r.text("out", c.out);
  r.integer("log_dense_until", c.log.dense_until);
  r.integer("log_every", c.log.every);

  for (auto& d : r.diagnostics()) diagnostics.push_back(std::move(d));
  if (!diagnostics.empty()) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const std::string& a, const std::string& b) {
      auto line_of = [](const std::string& s) {
        std::size_t n = 0;
        parse_number(std::string_view(s).substr(5, s.find(':') - 5), n);
        return n;
      };
      return line_of(a) < line_of(b);
    });
    throw ParseError(std::move(diagnostics));
  }
  auto violations = violations_of(c, &present);
  if (present.count("noise_sd") && c.reward.kind != RewardKind::Gaussian) {
    violations.push_back("noise_sd: only used with reward = gaussian");
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const ExperimentConfig& config) {
  auto violations = violations_of(config, nullptr);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

}  // namespace simarms::app
