#include <benchmark/benchmark.h>

#include <spinform/random.hpp>
#include <spinform/truncated.hpp>

using namespace spinform;

static void BM_GeometricProduct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Signature sig(d - d / 3, d / 3);
  Rng rng(1);
  const Multivector a = random_multivector(sig, rng), b = random_multivector(sig, rng);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_product(a, b));
  state.SetComplexityN(1 << d);
}
BENCHMARK(BM_GeometricProduct)->DenseRange(2, 8, 1)->Complexity();

static void BM_Wedge(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Signature sig(d, 0);
  Rng rng(2);
  const Multivector a = random_multivector(sig, rng), b = random_multivector(sig, rng);
  for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(BM_Wedge)->DenseRange(2, 8, 2);

static void BM_VeeProduct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Signature sig(d, 0);
  Rng rng(3);
  const auto a = random_truncated(sig, 1, rng), b = random_truncated(sig, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(vee_product(a, b));
}
BENCHMARK(BM_VeeProduct)->Arg(3)->Arg(5)->Arg(7);
