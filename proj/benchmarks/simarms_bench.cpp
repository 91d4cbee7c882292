#include <benchmark/benchmark.h>

#include "simarms/env.hpp"
#include "simarms/policies.hpp"
#include "simarms/runner.hpp"
#include "simarms/simgraph.hpp"

using namespace simarms;

static void BM_GraphInsert(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto means = sample_means(MeanSampler::uniform(), n, 1);
  for (auto _ : state) {
    SimilarityGraph g(0.01);
    for (ArmId i = 0; i < n; ++i) g.insert(i, means[i]);
    benchmark::DoNotOptimize(g.size());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_GraphInsert)->Arg(1000)->Arg(10000);

static void BM_NeighborhoodRange(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = SimilarityGraph::build(sample_means(MeanSampler::uniform(), n, 2), 0.01);
  ArmId a = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.neighborhood_range(a));
    a = (a + 1) % static_cast<ArmId>(n);
  }
}
BENCHMARK(BM_NeighborhoodRange)->Arg(10000);

static void BM_Trial(benchmark::State& state) {
  const auto kind = static_cast<PolicyKind>(state.range(0));
  ExperimentSpec spec;
  spec.policy = kind;
  spec.horizon = 10000;
  spec.num_arms = 1000;
  spec.epsilon = setting_of(kind) == Setting::Stationary ? 0.01 : 0.05;
  const auto inst = make_instance(spec, 3);
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(inst, kind, 3).final_regret());
  state.SetLabel(std::string(to_string(kind)));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * spec.horizon));
}
BENCHMARK(BM_Trial)->DenseRange(0, 7)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
