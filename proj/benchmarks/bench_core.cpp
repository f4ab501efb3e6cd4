#include <benchmark/benchmark.h>

#include "marketnet/correlation.hpp"
#include "marketnet/hierarchy.hpp"
#include "marketnet/mst.hpp"
#include "marketnet/synth.hpp"
#include "marketnet/threshold.hpp"

namespace {

using namespace marketnet;

// A 185-asset, 400-day window, the size the pipeline is meant for.
const ReturnPanel& bench_returns() {
  static const ReturnPanel returns = [] {
    SynthSpec spec;
    spec.n_assets = 185;
    spec.n_days = 400;
    spec.seed = 1;
    spec.regimes.push_back({"bench", 400, 0.45, normalized_idiosyncratic(0.45, 0.25), 5, 0.25});
    return log_returns(generate(spec));
  }();
  return returns;
}

const CorrMatrix& bench_corr() {
  static const CorrMatrix corr = cross_correlation(bench_returns());
  return corr;
}

const DistMatrix& bench_dist() {
  static const DistMatrix dist = distance_matrix(bench_corr());
  return dist;
}

void BM_CrossCorrelation(benchmark::State& state) {
  const auto& returns = bench_returns();
  for (auto _ : state) {
    auto corr = cross_correlation(returns);
    benchmark::DoNotOptimize(corr);
  }
}
BENCHMARK(BM_CrossCorrelation)->Unit(benchmark::kMillisecond);

void BM_KruskalMst(benchmark::State& state) {
  const auto& dist = bench_dist();
  for (auto _ : state) {
    auto tree = kruskal_mst(dist);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(BM_KruskalMst)->Unit(benchmark::kMillisecond);

void BM_Upgma(benchmark::State& state) {
  const auto& dist = bench_dist();
  for (auto _ : state) {
    auto tree = upgma(dist);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(BM_Upgma)->Unit(benchmark::kMillisecond);

void BM_ThresholdSweep(benchmark::State& state) {
  const auto& corr = bench_corr();
  std::vector<double> grid;
  for (int k = 0; k <= 18; ++k) grid.push_back(0.05 * k);
  for (auto _ : state) {
    auto rows = threshold_sweep(corr, grid);
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_ThresholdSweep)->Unit(benchmark::kMillisecond);

void BM_CopheneticCorrelation(benchmark::State& state) {
  const auto& dist = bench_dist();
  auto tree = upgma(dist);
  for (auto _ : state) {
    auto coph = cophenetic_matrix(tree);
    benchmark::DoNotOptimize(cophenetic_correlation(dist, coph));
  }
}
BENCHMARK(BM_CopheneticCorrelation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
