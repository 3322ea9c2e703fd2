#include <benchmark/benchmark.h>

#include "conelap/cone.hpp"
#include "conelap/estimator.hpp"
#include "conelap/experiment.hpp"
#include "conelap/fgft.hpp"
#include "conelap/glasso.hpp"
#include "conelap/synthgen.hpp"

using namespace conelap;

namespace {

GroundTruth data(std::size_t n) {
  GraphSpec spec;
  spec.n = n;
  spec.m_signals = n;
  spec.seed = 1;
  return generate(spec);
}

void BM_EigSym(benchmark::State& state) {
  const SymMatrix l = data(static_cast<std::size_t>(state.range(0))).laplacian;
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(l));
}
BENCHMARK(BM_EigSym)->Arg(10)->Arg(20)->Arg(50)->Arg(100);

void BM_ProjectToCone(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GroundTruth gt = data(n);
  const SymMatrix p = inverse_pd(gt.empirical_cov + 0.1 * SymMatrix::identity(n));
  const EigenPrior prior = EigenPrior::leading(eig_sym(gt.laplacian), 3);
  for (auto _ : state) benchmark::DoNotOptimize(project_to_cone(p, prior));
}
BENCHMARK(BM_ProjectToCone)->Arg(10)->Arg(20)->Arg(50);

void BM_BcdSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SymMatrix c_bar = data(n).empirical_cov;
  SweepOptions opts;
  opts.block_inverse = state.range(1) ? BlockInverse::rank_update : BlockInverse::direct;
  const GlassoState start = GlassoState::initial(c_bar, kDefaultRho);
  for (auto _ : state) benchmark::DoNotOptimize(bcd_sweep(start, opts));
}
BENCHMARK(BM_BcdSweep)->Args({20, 0})->Args({20, 1})->Args({64, 0})->Args({64, 1});

void BM_ProjLassoTrial(benchmark::State& state) {
  const GroundTruth gt = data(20);
  const EigenPrior prior =
      EigenPrior::leading(eig_sym(gt.laplacian), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(proj_lasso(gt.empirical_cov, prior));
}
BENCHMARK(BM_ProjLassoTrial)->Arg(1)->Arg(3);

void BM_Givens(benchmark::State& state) {
  const SymMatrix l = data(20).laplacian;
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_givens_diagonalize(l, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Givens)->Arg(200)->Arg(2000);

void BM_BenchTrial(benchmark::State& state) {
  BenchConfig cfg;
  cfg.trials = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, 0));
}
BENCHMARK(BM_BenchTrial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
