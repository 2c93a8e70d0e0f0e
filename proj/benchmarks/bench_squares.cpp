#include <benchmark/benchmark.h>

#include <spinform/random.hpp>
#include <spinform/spinor.hpp>
#include <spinform/verifier.hpp>

using namespace spinform;

namespace {

struct Setup {
  SpinorRep rep;
  Pairing pairing;
  Spinor eta;
};

Setup setup(const Signature& sig, PairingKind kind) {
  Setup s{build_rep(sig, sig.dim() % 2 ? 1 : 0), {}, {}};
  auto P = solve_admissible(s.rep, 1, kind);
  if (!P) P = solve_admissible(s.rep, -1, kind);
  s.pairing = P.value();
  Rng rng(7);
  s.eta = random_spinor(s.rep, rng);
  return s;
}

}  // namespace

static void BM_HermitianSquare(benchmark::State& state) {
  const Setup s = setup(Signature(static_cast<int>(state.range(0)), 0), PairingKind::hermitian);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_square(s.eta, 1.0, s.rep, s.pairing));
}
BENCHMARK(BM_HermitianSquare)->Arg(2)->Arg(4)->Arg(6);

static void BM_HermitianSquareDequantized(benchmark::State& state) {
  const Setup s = setup(Signature(static_cast<int>(state.range(0)), 0), PairingKind::hermitian);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_square_dequantized(s.eta, 1.0, s.rep, s.pairing));
}
BENCHMARK(BM_HermitianSquareDequantized)->Arg(2)->Arg(4)->Arg(6);

static void BM_BilinearSquare51(benchmark::State& state) {
  const Setup s = setup(Signature(5, 1), PairingKind::bilinear);
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_square(s.eta, s.rep, s.pairing));
}
BENCHMARK(BM_BilinearSquare51);

static void BM_Reconstruct31(benchmark::State& state) {
  const Setup s = setup(Signature(3, 1), PairingKind::bilinear);
  const Multivector alpha = bilinear_square(s.eta, s.rep, s.pairing);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_spinor(alpha, s.rep, s.pairing));
}
BENCHMARK(BM_Reconstruct31);

static void BM_SquareAxioms51(benchmark::State& state) {
  const Setup s = setup(Signature(5, 1), PairingKind::bilinear);
  const Multivector alpha = bilinear_square(s.eta, s.rep, s.pairing);
  AxiomOptions o;
  o.kind = PairingKind::bilinear;
  o.s = 1;
  o.sigma = s.pairing.sigma;
  for (auto _ : state) benchmark::DoNotOptimize(check_square_axioms(alpha, o));
}
BENCHMARK(BM_SquareAxioms51);
