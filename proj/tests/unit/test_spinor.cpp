#include <doctest.h>

#include <spinform/spinor.hpp>

#include "generators.hpp"

using namespace spinform;
using gen::Gen;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Vector spinor_vector(Gen& g, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = g.coefficient();
  return v;
}

}  // namespace

TEST_CASE("gamma matrices satisfy the Clifford relations") {
  for (int d = 1; d <= 8; ++d)
    for (int q = 0; q <= d; ++q) {
      const Signature sig(d - q, q);
      for (int ell : d % 2 ? std::vector<int>{1, -1} : std::vector<int>{0}) {
        const SpinorRep rep = build_rep(sig, ell);
        CHECK(rep.n == (1 << (d / 2)));
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            const Matrix ac = rep.gammas[i] * rep.gammas[j] + rep.gammas[j] * rep.gammas[i];
            const Matrix expect = Matrix::Identity(rep.n, rep.n) * (i == j ? 2 * sig.eps(i) : 0.0);
            CHECK(max_abs(ac - expect) < 1e-14);
          }
        CHECK(volume_residual(rep) < 1e-13);
      }
    }
}

TEST_CASE("quantization is an algebra map and dequantization inverts it (even d)") {
  Gen g(31);
  for (int t = 0; t < 60; ++t) {
    const int d = 2 * g.integer(1, 3);
    const int p = g.integer(0, d);
    const Signature sig(p, d - p);
    const SpinorRep rep = build_rep(sig);
    const auto a = g.multivector(sig), b = g.multivector(sig);
    const Matrix qab = quantize(gen::oracle_product(a, b), rep);
    CHECK(max_abs(qab - quantize(a, rep) * quantize(b, rep)) < 1e-11 * std::max(1.0, max_abs(qab)));
    CHECK(gen::rel_diff(dequantize(quantize(a, rep), rep), a) < 1e-13);
    // trace formula, written out independently
    const Matrix m = quantize(a, rep);
    for (Blade x = 0; x < a.size(); ++x) {
      const cplx c = (rep.blade_inv[x] * m).trace() / static_cast<double>(rep.n);
      CHECK(std::abs(c - a[x]) < 1e-12 * std::max(1.0, a.norm_inf()));
    }
  }
}

TEST_CASE("realized admissible pairings") {
  struct Row {
    int p, q, s;
    PairingKind kind;
    bool realized;
    int sigma;
  };
  // the hermitian sigma is reported as +1
  const std::vector<Row> rows = {
      {4, 1, 1, PairingKind::hermitian, false, 1}, {4, 1, -1, PairingKind::hermitian, true, 1},
      {4, 1, 1, PairingKind::bilinear, true, -1},  {4, 1, -1, PairingKind::bilinear, false, 1},
      {3, 0, 1, PairingKind::hermitian, true, 1},  {3, 0, -1, PairingKind::bilinear, true, 0},
      {3, 1, 1, PairingKind::bilinear, true, -1},  {3, 1, -1, PairingKind::bilinear, true, -1},
      {5, 1, 1, PairingKind::bilinear, true, -1},  {5, 1, -1, PairingKind::bilinear, true, 1},
  };
  for (const Row& r : rows) {
    CAPTURE(r.p);
    CAPTURE(r.q);
    CAPTURE(r.s);
    const SpinorRep rep = build_rep(Signature(r.p, r.q), (r.p + r.q) % 2 ? 1 : 0);
    const auto P = solve_admissible(rep, r.s, r.kind);
    CHECK(P.has_value() == r.realized);
    if (!P) continue;
    CHECK(admissibility_residual(rep, *P) < 1e-12);
    if (r.sigma != 0) CHECK(P->sigma == r.sigma);
  }
}

TEST_CASE("pairings are hermitian / symmetric of the reported type") {
  Gen g(32);
  for (auto sig : {Signature(2, 0), Signature(3, 1), Signature(4, 0), Signature(5, 1)}) {
    const SpinorRep rep = build_rep(sig);
    for (PairingKind kind : {PairingKind::hermitian, PairingKind::bilinear})
      for (int s : {1, -1}) {
        const auto P = solve_admissible(rep, s, kind);
        if (!P) continue;
        for (int t = 0; t < 10; ++t) {
          const Vector a = spinor_vector(g, rep.n), b = spinor_vector(g, rep.n);
          const cplx ab = evaluate(*P, a, b), ba = evaluate(*P, b, a);
          if (kind == PairingKind::hermitian)
            CHECK(std::abs(ab - std::conj(ba)) < 1e-12 * std::max(1.0, std::abs(ab)));
          else
            CHECK(std::abs(ab - static_cast<double>(P->sigma) * ba) < 1e-12 * std::max(1.0, std::abs(ab)));
        }
      }
  }
}

TEST_CASE("expansion and dequantization routes give the same square") {
  Gen g(33);
  for (auto sig : {Signature(2, 0), Signature(3, 0), Signature(3, 1), Signature(4, 1), Signature(5, 1)}) {
    const SpinorRep rep = build_rep(sig, sig.dim() % 2 ? 1 : 0);
    for (PairingKind kind : {PairingKind::hermitian, PairingKind::bilinear})
      for (int s : {1, -1}) {
        const auto P = solve_admissible(rep, s, kind);
        if (!P) continue;
        for (int t = 0; t < 10; ++t) {
          const Spinor eta{spinor_vector(g, rep.n), std::nullopt};
          if (kind == PairingKind::hermitian) {
            const cplx kappa = std::polar(1.0, g.uniform(0, 6.28));
            CHECK(gen::rel_diff(hermitian_square(eta, kappa, rep, *P),
                                hermitian_square_dequantized(eta, kappa, rep, *P)) < 1e-12);
          } else {
            CHECK(gen::rel_diff(bilinear_square(eta, rep, *P), bilinear_square_dequantized(eta, rep, *P)) < 1e-12);
          }
        }
      }
  }
}

TEST_CASE("bilinear squares reconstruct the spinor up to sign") {
  Gen g(34);
  for (auto sig : {Signature(3, 1), Signature(5, 1), Signature(4, 1)}) {
    const SpinorRep rep = build_rep(sig, sig.dim() % 2 ? 1 : 0);
    const auto P = solve_admissible(rep, 1, PairingKind::bilinear);
    REQUIRE(P);
    for (int t = 0; t < 20; ++t) {
      const Spinor eta{spinor_vector(g, rep.n), std::nullopt};
      const auto alpha = bilinear_square(eta, rep, *P);
      const Spinor back = reconstruct_spinor(alpha, rep, *P);
      const double err = std::min((back.v - eta.v).norm(), (back.v + eta.v).norm()) / eta.v.norm();
      CHECK(err < 1e-9);
    }
  }
}

TEST_CASE("hermitian squares reconstruct the spinor up to a phase") {
  Gen g(35);
  const SpinorRep rep = build_rep(Signature(4, 0));
  const auto P = solve_admissible(rep, 1, PairingKind::hermitian);
  REQUIRE(P);
  for (int t = 0; t < 20; ++t) {
    const Spinor eta{spinor_vector(g, rep.n), std::nullopt};
    const Spinor back = reconstruct_spinor(hermitian_square(eta, 1.0, rep, *P), rep, *P);
    const cplx phase = eta.v.dot(back.v) / eta.v.squaredNorm();
    CHECK(std::abs(std::abs(phase) - 1) < 1e-9);
    CHECK((back.v - phase * eta.v).norm() < 1e-9 * eta.v.norm());
  }
}

TEST_CASE("a dense mixed-grade form is not a square") {
  // a single grade can be entirely squares here (3-forms in (3,1)), so fill every blade
  Gen g(36);
  const Signature sig(3, 1);
  const SpinorRep rep = build_rep(sig);
  const auto P = solve_admissible(rep, 1, PairingKind::bilinear);
  REQUIRE(P);
  Multivector a(sig);
  for (Blade b = 0; b < a.size(); ++b) a[b] = g.coefficient();
  CHECK_THROWS_AS(reconstruct_spinor(a, rep, *P), NotASquare);
}
