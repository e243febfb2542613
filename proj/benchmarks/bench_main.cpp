#include <benchmark/benchmark.h>

#include <vector>

#include "combwalk/base_graph.hpp"
#include "combwalk/comb_graph.hpp"
#include "combwalk/kernels.hpp"
#include "combwalk/lattice_comb.hpp"
#include "combwalk/percolation.hpp"
#include "combwalk/resistance.hpp"
#include "combwalk/walker.hpp"

using namespace combwalk;

namespace {

CombGraph log2_comb(std::int32_t n) {
  return attach_teeth(make_z2_box(n), TeethProfile{ProfileFamily::logarithmic, 2.0, Metric::sup_norm, {}});
}

void BM_HeatKernelRow(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const auto comb = log2_comb(static_cast<std::int32_t>(t));
  for (auto _ : state) benchmark::DoNotOptimize(heat_kernel_row(comb, comb.root(), t));
}
BENCHMARK(BM_HeatKernelRow)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_ExplicitCombSteps(benchmark::State& state) {
  const auto comb = log2_comb(64);
  Rng rng(1);
  VertexId x = comb.root();
  for (auto _ : state) {
    for (int i = 0; i < 1000; ++i) x = step(comb, x, rng);
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ExplicitCombSteps);

void BM_LatticeCombSteps(benchmark::State& state) {
  const LatticeComb comb(2, ProfileFamily::logarithmic, 2.0, Metric::sup_norm);
  Rng rng(2);
  LatticeVertex x = comb.root();
  for (auto _ : state) {
    for (int i = 0; i < 1000; ++i) x = step(comb, x, rng);
    benchmark::DoNotOptimize(x);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_LatticeCombSteps);

void BM_PercolationClusters(benchmark::State& state) {
  const auto n = static_cast<std::int32_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(clusters(sample_bonds(n, 0.7, seed++)));
}
BENCHMARK(BM_PercolationClusters)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EffectiveResistance(benchmark::State& state) {
  const auto box = make_z2_box(static_cast<std::int32_t>(state.range(0)));
  const std::vector<VertexId> o{box.origin()};
  const std::vector<VertexId> out(box.boundary().begin(), box.boundary().end());
  SolverOptions opt;
  if (state.range(1) == 1) opt.direct_limit = 0;
  for (auto _ : state) benchmark::DoNotOptimize(effective_resistance(box.graph(), o, out, opt));
}
BENCHMARK(BM_EffectiveResistance)->Args({32, 0})->Args({32, 1})->Args({128, 0})->Args({128, 1})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
