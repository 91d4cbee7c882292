#include "simarms_app/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "simarms/graph_stats.hpp"
#include "simarms/oracle.hpp"
#include "simarms/rng.hpp"
#include "simarms_app/output.hpp"

namespace simarms::app {

namespace {

constexpr std::array<std::string_view, 9> kPresets = {
    "fig2-bernoulli", "fig2-gaussian", "fig3-bernoulli", "fig3-gaussian", "fig4a",
    "fig4b",          "fig4c",         "props-check",    "bounds-report",
};

constexpr double kFig2Epsilons[] = {0.005, 0.01, 0.02};

struct BallooningFamily {
  std::string_view name;
  MeanSampler sampler;
  double epsilon;
  RewardModel reward;
};

const std::array<BallooningFamily, 3>& ballooning_families() {
  static const std::array<BallooningFamily, 3> families = {{
      {"fig4a", MeanSampler::normal(), 0.3, RewardModel::gaussian()},
      {"fig4b", MeanSampler::uniform(), 0.05, RewardModel::bernoulli()},
      {"fig4c", MeanSampler::half_triangle(), 0.05, RewardModel::bernoulli()},
  }};
  return families;
}

PolicyOptions options_of(const Overrides& o) {
  PolicyOptions opts;
  if (o.delta) opts.delta = *o.delta;
  if (o.tau) opts.tau = *o.tau;
  return opts;
}

void check_overrides(const Overrides& o) {
  if (!(o.scale > 0.0) || !std::isfinite(o.scale)) throw UsageError("--scale must be a positive number");
  if (o.trials && *o.trials == 0) throw UsageError("--trials must be at least 1");
  if (o.delta && !(*o.delta > 0.0 && *o.delta < 1.0)) throw UsageError("--delta must lie in (0, 1)");
  if (o.tau && *o.tau == 0) throw UsageError("--tau must be at least 1");
}

std::string join_seeds(std::span<const std::uint64_t> seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) s += (i ? "," : "") + std::to_string(seeds[i]);
  return s;
}

void add_common(Manifest& m, std::string_view label) {
  m.add("version", std::string(version_string()));
  m.add("run", std::string(label));
}

}  // namespace

ScaledSize scaled_size(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw UsageError("scale must be a positive number");
  ScaledSize s;
  s.horizon = std::max<std::uint64_t>(10, static_cast<std::uint64_t>(std::llround(1e5 * scale)));
  s.num_arms = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(1e4 * scale)));
  s.trials = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(50.0 * scale)), 20, 50);
  return s;
}

std::span<const std::string_view> preset_names() { return kPresets; }

Plan preset_plan(std::string_view name, const Overrides& overrides) {
  check_overrides(overrides);
  const ScaledSize size = scaled_size(overrides.scale);
  Plan plan;
  plan.label = std::string(name);
  plan.trials = overrides.trials.value_or(size.trials);
  plan.seed = overrides.seed.value_or(kDefaultSeed);

  ExperimentSpec base;
  base.horizon = size.horizon;
  base.num_arms = size.num_arms;
  base.options = options_of(overrides);
  base.sampler = MeanSampler::uniform();

  const bool gaussian = name.ends_with("-gaussian");
  base.reward = gaussian ? RewardModel::gaussian() : RewardModel::bernoulli();

  if (name == "fig2-bernoulli" || name == "fig2-gaussian") {
    for (double eps : kFig2Epsilons) {
      ExperimentSpec spec = base;
      spec.policy = PolicyKind::UcbN;
      spec.epsilon = eps;
      plan.cells.push_back({"ucb-n_eps" + format_double(eps), spec});
      spec.standardize = true;
      plan.cells.push_back({"ucb-n-standard_eps" + format_double(eps), spec});
    }
  } else if (name == "fig3-bernoulli" || name == "fig3-gaussian") {
    for (PolicyKind k : {PolicyKind::UcbN, PolicyKind::DoubleUcb, PolicyKind::ConservativeUcb}) {
      ExperimentSpec spec = base;
      spec.policy = k;
      spec.epsilon = 0.01;
      plan.cells.push_back({std::string(to_string(k)), spec});
    }
  } else if (name == "fig4a" || name == "fig4b" || name == "fig4c") {
    const auto& fam = *std::find_if(ballooning_families().begin(), ballooning_families().end(),
                                    [&](const BallooningFamily& f) { return f.name == name; });
    for (PolicyKind k : {PolicyKind::DoubleUcbBl, PolicyKind::ConservativeUcbBl, PolicyKind::UDoubleUcb,
                         PolicyKind::UConservativeUcb}) {
      ExperimentSpec spec = base;
      spec.policy = k;
      spec.num_arms = 0;
      spec.epsilon = fam.epsilon;
      spec.sampler = fam.sampler;
      spec.reward = fam.reward;
      plan.cells.push_back({std::string(to_string(k)), spec});
    }
  } else if (name == "props-check" || name == "bounds-report") {
    throw UsageError("preset '" + std::string(name) + "' produces a report, not regret curves");
  } else {
    throw UsageError("unknown preset '" + std::string(name) + "'");
  }

  plan.settings.emplace_back("scale", format_double(overrides.scale));
  plan.settings.emplace_back("T", std::to_string(size.horizon));
  if (!name.starts_with("fig4")) plan.settings.emplace_back("K", std::to_string(size.num_arms));
  return plan;
}

Plan plan_from_config(const ExperimentConfig& c) {
  validate(c);
  Plan plan;
  plan.label = "config";
  plan.trials = c.trials;
  plan.seed = c.seed;
  plan.log = c.log;
  for (const auto& kv : c.echo()) plan.settings.emplace_back("config." + kv.first, kv.second);

  for (PolicyKind k : c.policies) {
    ExperimentSpec spec;
    spec.policy = k;
    spec.horizon = c.horizon;
    spec.num_arms = c.setting == Setting::Stationary ? c.num_arms : 0;
    spec.epsilon = c.epsilon;
    spec.reward = c.reward;
    spec.sampler = c.sampler;
    spec.options.delta = c.delta;
    spec.options.tau = c.tau;
    plan.cells.push_back({std::string(to_string(k)), spec});
    if (c.standardize) {
      spec.standardize = true;
      plan.cells.push_back({std::string(to_string(k)) + "-standard", spec});
    }
  }
  return plan;
}

RunReport run_plan(const Plan& plan, const std::filesystem::path& out, std::size_t parallel) {
  if (plan.cells.empty()) throw UsageError("nothing to run");
  RunReport report;
  Manifest manifest;
  add_common(manifest, plan.label);
  for (const auto& [k, v] : plan.settings) manifest.add(k, v);
  manifest.add("root_seed", std::to_string(plan.seed));
  manifest.add("trials", std::to_string(plan.trials));
  manifest.add("log_dense_until", std::to_string(plan.log.dense_until));
  manifest.add("log_every", std::to_string(plan.log.every));

  std::ostringstream finals;
  finals << "cell,trial,seed,final_regret\n";
  std::vector<std::uint64_t> seeds;

  for (const Cell& cell : plan.cells) {
    const AggregateResult result = run_batch(cell.spec, plan.trials, plan.seed, std::max<std::size_t>(parallel, 1));
    seeds = result.seeds;
    std::ostringstream csv;
    write_regret_csv(csv, result, plan.log.rounds(cell.spec.horizon));
    const auto path = out / (cell.name + ".csv");
    write_file(path, csv.str());
    report.files.push_back(path);

    for (std::size_t i = 0; i < result.final_regrets.size(); ++i) {
      finals << cell.name << ',' << i << ',' << result.seeds[i] << ',' << fixed6(result.final_regrets[i]) << '\n';
    }
    manifest.add("cell." + cell.name + ".spec", cell.spec.describe());
    manifest.add("cell." + cell.name + ".fingerprint", result.fingerprint);
    manifest.add("cell." + cell.name + ".file", path.filename().string());
    report.messages.push_back(cell.name + ": mean regret at T=" + std::to_string(cell.spec.horizon) + " " +
                              fixed6(result.mean.back()) + " [" + fixed6(result.lower.back()) + ", " +
                              fixed6(result.upper.back()) + "]");
  }
  manifest.add("seeds", join_seeds(seeds));

  write_file(out / "final_regrets.csv", finals.str());
  report.files.push_back(out / "final_regrets.csv");
  write_file(out / "manifest.txt", manifest.str());
  report.files.push_back(out / "manifest.txt");
  return report;
}

RunReport run_preset(std::string_view name, const Overrides& overrides, const std::filesystem::path& out,
                     std::size_t parallel) {
  if (name == "props-check") {
    check_overrides(overrides);
    return run_props_check(overrides.seed.value_or(kDefaultSeed), out);
  }
  if (name == "bounds-report") return run_bounds_report(overrides, out);
  return run_plan(preset_plan(name, overrides), out, parallel);
}

RunReport run_custom(const std::filesystem::path& config_path, const Overrides& overrides,
                     const std::filesystem::path& out, std::size_t parallel) {
  check_overrides(overrides);
  ExperimentConfig config = load_config(config_path);
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.trials) config.trials = *overrides.trials;
  if (overrides.delta) config.delta = *overrides.delta;
  if (overrides.tau) config.tau = *overrides.tau;
  Plan plan = plan_from_config(config);
  plan.label = "config:" + config_path.filename().string();
  const std::filesystem::path dir = !out.empty() ? out : std::filesystem::path(config.out.empty() ? "out" : config.out);
  return run_plan(plan, dir, parallel);
}

RunReport run_props_check(std::uint64_t seed, const std::filesystem::path& out, std::size_t graphs) {
  const StructuralReport r = structural_suite(graphs, seed);
  RunReport report;
  const std::string summary = r.summary();
  const std::string local =
      "alpha(N_i)<=2: " + std::to_string(r.local_alpha_at_most_two) + "/" + std::to_string(r.graphs);
  write_file(out / "props_check.txt", summary + "\n" + local + "\n");
  report.files.push_back(out / "props_check.txt");

  Manifest m;
  add_common(m, "props-check");
  m.add("root_seed", std::to_string(seed));
  m.add("graphs", std::to_string(graphs));
  m.add("max_arms", "12");
  m.add("samplers", "normal,uniform,half-triangle");
  m.add("epsilons", "0.05,0.1,0.3");
  write_file(out / "manifest.txt", m.str());
  report.files.push_back(out / "manifest.txt");
  report.messages = {summary, local};
  return report;
}

RunReport run_bounds_report(const Overrides& overrides, const std::filesystem::path& out) {
  check_overrides(overrides);
  const ScaledSize size = scaled_size(overrides.scale);
  const std::uint64_t seed = overrides.seed.value_or(kDefaultSeed);
  const std::size_t n_mc = overrides.trials.value_or(size.trials);
  const LogSchedule log;
  const auto horizons = log.rounds(size.horizon);

  RunReport report;
  Manifest m;
  add_common(m, "bounds-report");
  m.add("scale", format_double(overrides.scale));
  m.add("T", std::to_string(size.horizon));
  m.add("root_seed", std::to_string(seed));

  auto emit = [&](const std::string& stem, const std::function<double(double)>& curve) {
    std::ostringstream csv;
    write_bound_csv(csv, curve, horizons);
    write_file(out / (stem + ".csv"), csv.str());
    report.files.push_back(out / (stem + ".csv"));
  };

  // Stationary: the first trial instance of the fig3 presets.
  {
    ExperimentSpec spec;
    spec.horizon = size.horizon;
    spec.num_arms = size.num_arms;
    spec.epsilon = 0.01;
    const auto inst = make_instance(spec, derive_seed(seed, 0));
    const auto& means = inst.means();
    BoundParams p = stationary_bound_params(means, spec.epsilon);
    const GapProfile g = gap_profile(means, spec.epsilon);
    const auto gamma = interval_domination_number(SimilarityGraph::build(means, spec.epsilon));
    m.add("stationary.K", std::to_string(size.num_arms));
    m.add("stationary.epsilon", format_double(spec.epsilon));
    m.add("stationary.gamma", std::to_string(gamma));
    m.add("stationary.delta_min", format_double(g.delta_min));
    m.add("stationary.delta_max", format_double(g.delta_max));
    m.add("stationary.delta_2eps", format_double(g.delta_2eps));
    m.add("stationary.inverse_gap_sum", format_double(*p.inverse_gap_sum));
    m.add("stationary.c1", format_double(*p.c1));
    m.add("stationary.c1_ratio_threshold", format_double(kC1RatioThreshold));
    m.add("stationary.c1_case", c1_first_case(spec.epsilon, g.delta_min) ? "max(epsilon,delta_min)" : "epsilon");
    for (BoundKind k : {BoundKind::DoubleGapFree, BoundKind::DoubleGapDependent, BoundKind::ConservativeGapDependent,
                        BoundKind::ConservativeKnownGraph, BoundKind::UcbN}) {
      emit("bounds_" + std::string(to_string(k)), bound_curve(k, p));
    }
  }

  // Ballooning: expectations estimated at the final horizon, so each upper
  // curve is evaluated with end-of-run parameters. The lower bound uses B at
  // every logged round.
  for (const auto& fam : ballooning_families()) {
    const std::uint64_t fam_seed = derive_seed(seed, 1 + static_cast<std::uint64_t>(&fam - &ballooning_families()[0]));
    const auto stats = estimate_ballooning_stats(fam.sampler, size.horizon, fam.epsilon, n_mc, fam_seed);
    const auto moments = estimate_graph_moments(fam.sampler, size.horizon, fam.epsilon, n_mc, fam_seed);
    BoundParams p;
    p.epsilon = fam.epsilon;
    p.alpha_sq_mean = moments.alpha_sq.mean;
    p.delta_max_sq_mean = moments.delta_max_sq.mean;
    p.expected_m = stats.m.mean;
    p.alpha = std::sqrt(moments.alpha_sq.mean);
    p.delta_max_T = std::sqrt(moments.delta_max_sq.mean);
    p.h = stats.h.mean;
    if (overrides.tau) p.tau = static_cast<double>(*overrides.tau);

    const std::string prefix = "ballooning." + std::string(fam.name) + ".";
    m.add(prefix + "epsilon", format_double(fam.epsilon));
    m.add(prefix + "sampler", std::string(to_string(fam.sampler.kind)));
    m.add(prefix + "streams", std::to_string(n_mc));
    m.add(prefix + "stream_seed", std::to_string(fam_seed));
    m.add(prefix + "alpha_sq_mean", format_double(*p.alpha_sq_mean));
    m.add(prefix + "delta_max_sq_mean", format_double(*p.delta_max_sq_mean));
    m.add(prefix + "M", format_double(stats.m.mean));
    m.add(prefix + "H", format_double(stats.h.mean));
    m.add(prefix + "B", format_double(stats.b.mean));

    for (BoundKind k : {BoundKind::DoubleBallooning, BoundKind::ConservativeBallooning, BoundKind::UDoubleBallooning,
                        BoundKind::UConservativeBallooning}) {
      emit("bounds_" + std::string(to_string(k)) + "_" + std::string(fam.name), bound_curve(k, p));
    }

    std::vector<double> b_at(horizons.size(), 0.0);
    for (std::size_t r = 0; r < n_mc; ++r) {
      const auto means = sample_means(fam.sampler, size.horizon, derive_seed(fam_seed, r));
      const auto counts = count_ballooning_prefixes(means, fam.epsilon, horizons);
      for (std::size_t i = 0; i < counts.size(); ++i) b_at[i] += static_cast<double>(counts[i].b);
    }
    std::ostringstream csv;
    csv << "T,bound\n";
    for (std::size_t i = 0; i < horizons.size(); ++i) {
      BoundParams lp;
      lp.epsilon = fam.epsilon;
      lp.b = b_at[i] / static_cast<double>(n_mc);
      csv << horizons[i] << ',' << fixed6(bound_value(BoundKind::DoubleBallooningLower, lp, static_cast<double>(horizons[i])))
          << '\n';
    }
    const auto stem = "bounds_" + std::string(to_string(BoundKind::DoubleBallooningLower)) + "_" + std::string(fam.name);
    write_file(out / (stem + ".csv"), csv.str());
    report.files.push_back(out / (stem + ".csv"));
  }

  write_file(out / "manifest.txt", m.str());
  report.files.push_back(out / "manifest.txt");
  report.messages.push_back("wrote " + std::to_string(report.files.size() - 1) + " bound curves to " + out.string());
  return report;
}

}  // namespace simarms::app
