#include <benchmark/benchmark.h>

#include <spinform/solutions.hpp>

using namespace spinform;

static void BM_CurvatureBlackBrane(benchmark::State& state) {
  const SixDSolution s = black_brane_chart(1.0);
  const RVec x = sample_points(s.chart, 1, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(curvature(s.chart, x));
}
BENCHMARK(BM_CurvatureBlackBrane);

static void BM_Sugra6dResidual(benchmark::State& state) {
  const SixDSolution s = black_brane_chart(1.0);
  const RVec x = sample_points(s.chart, 1, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(sugra6d_residual(s.chart, s.H, s.N.mu, x));
}
BENCHMARK(BM_Sugra6dResidual);

static void BM_KillingSystem(benchmark::State& state) {
  const KillingWarped k = killing_warped_chart(KillingCase::real4d, 0.5, 1);
  const RVec x = sample_points(k.chart, 1, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(killing_system_residual(k, x));
}
BENCHMARK(BM_KillingSystem);

static void BM_RadialRK4(benchmark::State& state) {
  const double step = 1.0 / static_cast<double>(state.range(0));
  RadialParams p;
  RadialInit init;
  init.r0 = -1.2;
  const RadialState s0 = radial_initial(p, init);
  for (auto _ : state) benchmark::DoNotOptimize(radial_integrate(s0, p, 1.2, step));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(2.4 / step));
}
BENCHMARK(BM_RadialRK4)->Arg(100)->Arg(1000)->Arg(10000);
