#include <benchmark/benchmark.h>

#include "tuttemc/diagnostics.hpp"
#include "tuttemc/exact.hpp"
#include "tuttemc/generators.hpp"
#include "tuttemc/sampler.hpp"

namespace {

using namespace tuttemc;

void BM_Components(benchmark::State& state) {
  const Graph g = complete_graph(static_cast<std::size_t>(state.range(0)));
  SplitMix64 rng(1);
  const EdgeSubset a = sample_gp(g, 0.1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(components(g, a));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_Components)->Arg(32)->Arg(128)->Arg(512);

void BM_Sampler(benchmark::State& state) {
  const Graph g = complete_graph(static_cast<std::size_t>(state.range(0)));
  SamplerConfig cfg;
  cfg.t_override = 10000;
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(estimate_q_kappa_mean(g, 0.3, 2.0, cfg).mean);
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Sampler)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_StateSum(benchmark::State& state) {
  const Graph g = complete_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tutte_statesum(g, Rational(3, 2), Rational(4)));
  }
}
BENCHMARK(BM_StateSum)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_GStar(benchmark::State& state) {
  SplitMix64 rng(3);
  const Graph g = gen_family({Subdense{2.0}, static_cast<std::size_t>(state.range(0))}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_gstar(g, 2.0).report.gstar_components);
}
BENCHMARK(BM_GStar)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
