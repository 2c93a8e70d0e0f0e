#include "curvature_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <spinform/solutions.hpp>

#include "jet.hpp"

namespace oracle {
namespace {

using spinform::MetricChart;
using spinform::RMat;
using spinform::RVec;

template <int N>
using Pt = std::array<Jet<N>, N>;
template <int N>
using Sym = std::array<std::array<Jet<N>, N>, N>;

template <int N>
Pt<N> seed(const RVec& y) {
  Pt<N> p;
  for (int i = 0; i < N; ++i) p[i] = Jet<N>::var(y[i], i);
  return p;
}

// Levi-Civita data of h from its exact second jet.
template <int N>
struct Geom {
  double h[N][N], hi[N][N];
  double G[N][N][N];      // G[k][i][j] = Gamma^k_ij
  double dG[N][N][N][N];  // dG[l][k][i][j] = d_l Gamma^k_ij
  double ric[N][N];
  double scal = 0;

  explicit Geom(const Sym<N>& m) {
    Eigen::Matrix<double, N, N> M;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) M(i, j) = h[i][j] = m[i][j].v;
    const Eigen::Matrix<double, N, N> Mi = M.inverse();
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) hi[i][j] = Mi(i, j);
    auto d = [&](int a, int b, int k) { return m[a][b].g[k]; };
    auto dd = [&](int a, int b, int k, int l) { return m[a][b].h[k][l]; };
    double dhi[N][N][N];  // d_l h^{ab}
    for (int l = 0; l < N; ++l)
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          double s = 0;
          for (int c = 0; c < N; ++c)
            for (int e = 0; e < N; ++e) s -= hi[a][c] * d(c, e, l) * hi[e][b];
          dhi[l][a][b] = s;
        }
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          double s = 0;
          for (int m2 = 0; m2 < N; ++m2) s += 0.5 * hi[k][m2] * (d(m2, i, j) + d(m2, j, i) - d(i, j, m2));
          G[k][i][j] = s;
          for (int l = 0; l < N; ++l) {
            double t = 0;
            for (int m2 = 0; m2 < N; ++m2)
              t += 0.5 * dhi[l][k][m2] * (d(m2, i, j) + d(m2, j, i) - d(i, j, m2)) +
                   0.5 * hi[k][m2] * (dd(m2, i, j, l) + dd(m2, j, i, l) - dd(i, j, m2, l));
            dG[l][k][i][j] = t;
          }
        }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double s = 0;
        for (int k = 0; k < N; ++k) {
          s += dG[k][k][i][j] - dG[j][k][i][k];
          for (int l = 0; l < N; ++l) s += G[k][k][l] * G[l][i][j] - G[k][j][l] * G[l][i][k];
        }
        ric[i][j] = s;
      }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) scal += hi[i][j] * ric[i][j];
  }

  double hess(const Jet<N>& f, int i, int j) const {
    double s = f.h[i][j];
    for (int k = 0; k < N; ++k) s -= G[k][i][j] * f.g[k];
    return s;
  }
  // nabla^* d f, the positive Laplacian
  double lap_star(const Jet<N>& f) const {
    double s = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) s -= hi[i][j] * hess(f, i, j);
    return s;
  }
  double inner(const Jet<N>& a, const Jet<N>& b) const {
    double s = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) s += hi[i][j] * a.g[i] * b.g[j];
    return s;
  }
};

// ---- Brinkmann: g = H du^2 + du (.) (dv + A) + h on (u, v, x)

template <int N>
struct BrinkmannData {
  Sym<N> h;
  Pt<N> A;
  Jet<N> H;
};

template <int N>
RMat brinkmann_metric(const BrinkmannData<N>& b) {
  RMat g = RMat::Zero(N + 2, N + 2);
  g(0, 0) = b.H.v;
  g(0, 1) = g(1, 0) = 1;
  for (int i = 0; i < N; ++i) {
    g(0, i + 2) = g(i + 2, 0) = b.A[i].v;
    for (int j = 0; j < N; ++j) g(i + 2, j + 2) = b.h[i][j].v;
  }
  return g;
}

template <int N>
std::pair<RMat, double> brinkmann_ricci(const BrinkmannData<N>& b) {
  const Geom<N> geo(b.h);
  double F[N][N], dF[N][N][N];  // dF[k][i][j] = d_k F_ij
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      F[i][j] = b.A[j].g[i] - b.A[i].g[j];
      for (int k = 0; k < N; ++k) dF[k][i][j] = b.A[j].h[i][k] - b.A[i].h[j][k];
    }
  double norm2 = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) norm2 += 0.5 * F[i][j] * F[k][l] * geo.hi[i][k] * geo.hi[j][l];
  double divF[N];  // (nabla^* F)_j = -h^{ik} nabla_k F_ij
  for (int j = 0; j < N; ++j) {
    double s = 0;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        double cov = dF[k][i][j];
        for (int l = 0; l < N; ++l) cov -= geo.G[l][k][i] * F[l][j] + geo.G[l][k][j] * F[i][l];
        s -= geo.hi[i][k] * cov;
      }
    divF[j] = s;
  }
  RMat ric = RMat::Zero(N + 2, N + 2);
  ric(0, 0) = 0.5 * (norm2 + geo.lap_star(b.H));
  for (int i = 0; i < N; ++i) {
    ric(0, i + 2) = ric(i + 2, 0) = 0.5 * divF[i];
    for (int j = 0; j < N; ++j) ric(i + 2, j + 2) = geo.ric[i][j];
  }
  return {ric, geo.scal};
}

// ---- non-twisting Kundt: g = H du^2 + e^F du (.) dv + h on (u, v, y)

template <int N>
struct KundtData {
  Sym<N> h;  // wave-front metric
  Jet<N> F, H;
};

template <int N>
RMat kundt_metric(const KundtData<N>& k) {
  RMat g = RMat::Zero(N + 2, N + 2);
  g(0, 0) = k.H.v;
  g(0, 1) = g(1, 0) = std::exp(k.F.v);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g(i + 2, j + 2) = k.h[i][j].v;
  return g;
}

template <int N>
std::pair<RMat, double> kundt_ricci(const KundtData<N>& k) {
  const Geom<N> geo(k.h);
  const double dF2 = geo.inner(k.F, k.F);
  const double lapF = geo.lap_star(k.F);
  RMat ric = RMat::Zero(N + 2, N + 2);
  ric(0, 0) = 0.5 * geo.lap_star(k.H) + 0.5 * geo.inner(k.H, k.F) - 0.5 * k.H.v * dF2;
  ric(0, 1) = ric(1, 0) = 0.5 * std::exp(k.F.v) * (lapF - dF2);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      ric(i + 2, j + 2) = geo.ric[i][j] - geo.hess(k.F, i, j) - 0.5 * k.F.g[i] * k.F.g[j];
  return {ric, geo.scal + 2 * lapF - 1.5 * dF2};
}

template <class Make, class Metric, class Ricci>
CurvatureCase make_case(std::string name, MetricChart chart, Make make, Metric metric, Ricci ricci) {
  CurvatureCase c;
  c.name = std::move(name);
  c.chart = std::move(chart);
  c.metric = [=](const RVec& x) { return metric(make(x)); };
  c.ricci = [=](const RVec& x) { return ricci(make(x)).first; };
  c.scalar = [=](const RVec& x) { return ricci(make(x)).second; };
  return c;
}

template <class Metric>
MetricChart chart_from(std::string name, spinform::Signature sig, RVec lo, RVec hi, Metric metric) {
  MetricChart c;
  c.name = std::move(name);
  c.sig = sig;
  c.g = metric;
  c.lo = std::move(lo);
  c.hi = std::move(hi);
  return c;
}

// ---- charts

CurvatureCase freedman_case() {
  spinform::FreedmanParams p;
  p.R = 1.3;
  p.c1 = 0.4;
  p.c2 = -0.7;
  p.c3 = 1.1;
  p.cc = 0.25;
  p.e = 0.9;
  const auto sol = spinform::freedman_chart(p);
  const double lam = sol.lambda_I;
  auto make = [p, lam](const RVec& x) {
    using J = Jet<2>;
    const Pt<2> y = seed<2>(x.tail(2));
    const J th = y[0], ph = y[1];
    const J psi = p.c1 * sin(th) * cos(ph) + p.c2 * sin(th) * sin(ph) + p.c3 * cos(th);
    const J psi_th = p.c1 * cos(th) * cos(ph) + p.c2 * cos(th) * sin(ph) - p.c3 * sin(th);
    const J psi_ph = -p.c1 * sin(th) * sin(ph) + p.c2 * sin(th) * cos(ph);
    BrinkmannData<2> b;
    b.h[0][0] = J(p.R * p.R);
    b.h[1][1] = p.R * p.R * sin(th) * sin(th);
    b.h[0][1] = b.h[1][0] = J(0.0);
    b.A[0] = -p.mu / lam * psi_ph / sin(th);
    b.A[1] = p.mu / lam * sin(th) * psi_th;
    b.H = -(psi * psi / (p.R * p.R) + p.cc) / (lam * lam);
    return b;
  };
  return make_case("freedman", sol.chart, make, brinkmann_metric<2>, brinkmann_ricci<2>);
}

CurvatureCase black_brane_case() {
  const double m = 0.8, Hbar = 0.6;
  const auto sol = spinform::black_brane_chart(m, Hbar);
  auto make = [m, Hbar](const RVec& x) {
    using J = Jet<4>;
    const Pt<4> y = seed<4>(x.tail(4));
    const J r = y[3];
    const J A = 1.0 + m / (r * r);  // e^{-F}
    KundtData<4> k;
    for (auto& row : k.h) row.fill(J(0.0));
    k.h[0][0] = A * r * r;
    k.h[1][1] = A * r * r * sin(y[0]) * sin(y[0]);
    k.h[2][2] = A * r * r * cos(y[0]) * cos(y[0]);
    k.h[3][3] = A;
    k.F = -log(A);
    k.H = Hbar / A;
    return k;
  };
  return make_case("black_brane", sol.chart, make, kundt_metric<4>, kundt_ricci<4>);
}

CurvatureCase radial_case() {
  spinform::RadialFamilyParams p;
  p.radial.m1 = 0.4;
  p.radial.m2 = 1.2;
  const auto sol = spinform::radial_family_chart(p);
  const auto cf = spinform::radial_closed_form(p.radial, p.r0, p.F0);
  const double a = std::sqrt(std::abs(p.radial.lambda) / 2);
  const double m1 = p.radial.m1;
  auto make = [cf, a, m1](const RVec& x) {
    using J = Jet<4>;
    const Pt<4> y = seed<4>(x.tail(4));
    const double r = x[5], d = 1e-5;
    const double Kpp = (cf.Kp(r + d) - cf.Kp(r - d)) / (2 * d);
    const double Fpp = (cf.Fp(r + d) - cf.Fp(r - d)) / (2 * d);
    const J K = profile<4>(cf.K(r), cf.Kp(r), Kpp, 3);
    const J F = profile<4>(cf.F(r), cf.Fp(r), Fpp, 3);
    // Hbar = m1 rho + m2 with rho' = e^{-K}
    const double emK = std::exp(-cf.K(r));
    const J Hbar = profile<4>(cf.Hbar(r), m1 * emK, -m1 * cf.Kp(r) * emK, 3);
    const J w = exp(K - F);
    KundtData<4> k;
    for (auto& row : k.h) row.fill(J(0.0));
    k.h[0][0] = w;
    k.h[1][1] = w * exp(2 * a * y[0]);
    k.h[2][2] = w * exp(2 * a * y[0]);
    k.h[3][3] = w;
    k.F = F;
    k.H = Hbar * exp(F);
    return k;
  };
  return make_case("radial", sol.chart, make, kundt_metric<4>, kundt_ricci<4>);
}

BrinkmannData<2> twisted_data(const RVec& x) {
  using J = Jet<2>;
  const Pt<2> y = seed<2>(x.tail(2));
  const J X = y[0], Y = y[1];
  BrinkmannData<2> b;
  b.h[0][0] = 1.0 + 0.2 * Y * Y;
  b.h[0][1] = b.h[1][0] = 0.1 * X;
  b.h[1][1] = 1.5 + 0.3 * sin(X);
  b.A[0] = 0.4 * sin(Y);
  b.A[1] = 0.3 * X * X - 0.2 * X * Y;
  b.H = 0.5 + X * Y - 0.3 * cos(X);
  return b;
}

KundtData<4> generic_kundt_data(const RVec& x) {
  using J = Jet<4>;
  const Pt<4> y = seed<4>(x.tail(4));
  const J phi = 0.2 * sin(y[0]) * cos(y[1]) + 0.1 * y[2] * y[3];
  KundtData<4> k;
  for (auto& row : k.h) row.fill(J(0.0));
  for (int i = 0; i < 4; ++i) k.h[i][i] = exp(2 * phi);
  k.h[0][2] = k.h[2][0] = 0.15 * cos(y[3]);
  k.h[1][3] = k.h[3][1] = 0.1 * y[0];
  k.F = 0.3 * sin(y[0] + y[3]) + 0.1 * y[1] * y[1];
  k.H = 1.0 + 0.5 * cos(y[1]) * y[2];
  return k;
}

}  // namespace

std::vector<CurvatureCase> curvature_cases() {
  std::vector<CurvatureCase> out;
  out.push_back(freedman_case());
  out.push_back(black_brane_case());
  out.push_back(radial_case());
  {
    RVec lo(4), hi(4);
    lo << -1, -1, -1, -1;
    hi << 1, 1, 1, 1;
    auto g = [](const RVec& x) { return brinkmann_metric<2>(twisted_data(x)); };
    out.push_back(make_case("brinkmann_twisted", chart_from("brinkmann_twisted", spinform::Signature(3, 1, 1), lo, hi, g),
                            twisted_data, brinkmann_metric<2>, brinkmann_ricci<2>));
  }
  {
    RVec lo(6), hi(6);
    lo << -1, -1, -1, -1, -1, -1;
    hi << 1, 1, 1, 1, 1, 1;
    auto g = [](const RVec& x) { return kundt_metric<4>(generic_kundt_data(x)); };
    out.push_back(make_case("kundt_generic", chart_from("kundt_generic", spinform::Signature(5, 1, 1), lo, hi, g),
                            generic_kundt_data, kundt_metric<4>, kundt_ricci<4>));
  }
  return out;
}

CurvatureComparison compare_curvature(const CurvatureCase& c, int points, std::uint64_t seed_value) {
  CurvatureComparison out;
  for (const RVec& x : spinform::sample_points(c.chart, points, seed_value)) {
    const RMat g = c.chart.g(x);
    out.metric_mismatch = std::max(out.metric_mismatch, (g - c.metric(x)).cwiseAbs().maxCoeff());
    const auto num = spinform::curvature(c.chart, x);
    const RMat orc = c.ricci(x);
    const RMat rel = (num.ricci - orc).cwiseAbs().cwiseQuotient(orc.cwiseAbs().cwiseMax(1.0));
    out.max_rel = std::max(out.max_rel, rel.maxCoeff());
    const double s = c.scalar(x);
    out.scalar_rel = std::max(out.scalar_rel, std::abs(num.scalar - s) / std::max(1.0, std::abs(s)));
    ++out.points;
  }
  return out;
}

}  // namespace oracle
