#include "spinform/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <type_traits>

#include "spinform/verifier.hpp"

namespace spinform {

namespace {

template <class F>
auto d1(const F& f, const RVec& x, int mu, double h) {
  RVec xp1 = x, xm1 = x, xp2 = x, xm2 = x;
  xp1[mu] += h;
  xm1[mu] -= h;
  xp2[mu] += 2 * h;
  xm2[mu] -= 2 * h;
  using R = std::decay_t<decltype(f(x))>;
  R out = (f(xm2) - 8.0 * f(xm1) + 8.0 * f(xp1) - f(xp2)) * (1.0 / (12.0 * h));
  return out;
}

void check_dim(const MetricChart& chart, const RVec& x) {
  if (x.size() != chart.dim()) throw ContractViolation("point dimension does not match chart " + chart.name);
}

// Image of every blade under the algebra map induced by basis 1-form i -> sum_j A(j, i) f^j.
Multivector transform_forms(const Multivector& a, const RMat& A, const Signature& target) {
  const int d = a.dim();
  const std::size_t N = std::size_t{1} << d;
  std::vector<Multivector> image(N);
  image[0] = Multivector::scalar(target, 1.0);
  Multivector out(target);
  for (Blade b = 1; b < N; ++b) {
    const int top = 31 - std::countl_zero(b);
    // wedge with a one-form on the right, unrolled
    const Multivector& prev = image[b & ~(Blade{1} << top)];
    Multivector img(target);
    for (Blade c = 0; c < N; ++c) {
      if (prev[c] == cplx{}) continue;
      for (int j = 0; j < d; ++j) {
        const Blade bj = Blade{1} << j;
        if ((c & bj) || A(j, top) == 0.0) continue;
        const int above = std::popcount(c & ~((bj << 1) - 1));
        img[c | bj] += (above % 2 ? -1.0 : 1.0) * A(j, top) * prev[c];
      }
    }
    image[b] = std::move(img);
  }
  for (Blade b = 0; b < N; ++b) {
    if (a[b] == cplx{}) continue;
    out += a[b] * image[b];
  }
  return out;
}

}  // namespace

RMat metric(const MetricChart& chart, const RVec& x) {
  check_dim(chart, x);
  RMat g = chart.g(x);
  if (g.rows() != chart.dim() || g.cols() != chart.dim()) throw ContractViolation("metric has wrong shape");
  return g;
}

std::vector<RMat> metric_derivatives(const MetricChart& chart, const RVec& x, bool force_fd) {
  check_dim(chart, x);
  if (chart.dg && !force_fd) return chart.dg(x);
  std::vector<RMat> out(chart.dim());
  for (int k = 0; k < chart.dim(); ++k) out[k] = d1(chart.g, x, k, chart.h_fd());
  return out;
}

Christoffel christoffel(const MetricChart& chart, const RVec& x, bool force_fd) {
  const int d = chart.dim();
  const RMat ginv = metric(chart, x).inverse();
  const auto dg = metric_derivatives(chart, x, force_fd);
  Christoffel G;
  G.d = d;
  G.v.assign(d * d * d, 0.0);
  for (int r = 0; r < d; ++r)
    for (int m = 0; m < d; ++m)
      for (int n = m; n < d; ++n) {
        double s = 0;
        for (int l = 0; l < d; ++l) s += ginv(r, l) * (dg[m](l, n) + dg[n](l, m) - dg[l](m, n));
        G(r, m, n) = G(r, n, m) = 0.5 * s;
      }
  return G;
}

Curvature curvature(const MetricChart& chart, const RVec& x) {
  const int d = chart.dim();
  const Christoffel G = christoffel(chart, x);
  std::vector<std::vector<double>> dG(d);
  for (int m = 0; m < d; ++m) {
    auto f = [&](const RVec& y) {
      return Eigen::Map<const Eigen::VectorXd>(christoffel(chart, y).v.data(), d * d * d).eval();
    };
    RVec v = d1(f, x, m, chart.h_outer());
    dG[m].assign(v.data(), v.data() + v.size());
  }
  auto dGa = [&](int m, int r, int a, int b) { return dG[m][(r * d + a) * d + b]; };
  Curvature C;
  C.d = d;
  C.riemann.assign(d * d * d * d, 0.0);
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
          double v = dGa(m, r, n, s) - dGa(n, r, m, s);
          for (int l = 0; l < d; ++l) v += G(r, m, l) * G(l, n, s) - G(r, n, l) * G(l, m, s);
          C.riemann[((r * d + s) * d + m) * d + n] = v;
        }
  C.ricci = RMat::Zero(d, d);
  for (int s = 0; s < d; ++s)
    for (int n = 0; n < d; ++n)
      for (int r = 0; r < d; ++r) C.ricci(s, n) += C.R(r, s, r, n);
  C.ricci = 0.5 * (C.ricci + C.ricci.transpose()).eval();
  C.scalar = (metric(chart, x).inverse() * C.ricci).trace();
  return C;
}

double einstein_divergence(const MetricChart& chart, const RVec& x) {
  const int d = chart.dim();
  auto einstein = [&](const RVec& y) {
    const Curvature C = curvature(chart, y);
    return (C.ricci - 0.5 * C.scalar * metric(chart, y)).eval();
  };
  const RMat Gx = einstein(x);
  const Christoffel G = christoffel(chart, x);
  const RMat ginv = metric(chart, x).inverse();
  std::vector<RMat> dE(d);
  for (int a = 0; a < d; ++a) dE[a] = d1(einstein, x, a, 10.0 * chart.h_outer());
  double worst = 0;
  for (int n = 0; n < d; ++n) {
    double v = 0;
    for (int a = 0; a < d; ++a)
      for (int m = 0; m < d; ++m) {
        double t = dE[a](m, n);
        for (int l = 0; l < d; ++l) t -= G(l, a, m) * Gx(l, n) + G(l, a, n) * Gx(m, l);
        v += ginv(a, m) * t;
      }
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

Frame orthonormal_frame(const MetricChart& chart, const RVec& x) {
  const int d = chart.dim();
  const RMat g = metric(chart, x);
  std::vector<RVec> cands;
  std::vector<int> order;
  for (int t : chart.timelike) order.push_back(t);
  for (int m = 0; m < d; ++m)
    if (std::find(order.begin(), order.end(), m) == order.end()) order.push_back(m);
  for (int m : order) cands.push_back(RVec::Unit(d, m));
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) {
      cands.push_back(RVec::Unit(d, m) + RVec::Unit(d, n));
      cands.push_back(RVec::Unit(d, m) - RVec::Unit(d, n));
    }

  std::vector<RVec> basis;
  std::vector<double> eps;
  for (int step = 0; step < d; ++step) {
    double best = -1;
    RVec pick;
    for (const RVec& c : cands) {
      RVec w = c;
      for (std::size_t b = 0; b < basis.size(); ++b) w -= eps[b] * c.dot(g * basis[b]) * basis[b];
      const double score = std::abs(w.dot(g * w)) / c.squaredNorm();
      if (score > best * (1 + 1e-12)) {
        best = score;
        pick = w;
      }
    }
    if (best <= 1e-14) throw ContractViolation("degenerate metric in chart " + chart.name);
    const double n2 = pick.dot(g * pick);
    basis.push_back(pick / std::sqrt(std::abs(n2)));
    eps.push_back(n2 > 0 ? 1.0 : -1.0);
  }
  Frame f;
  f.vectors = RMat(d, d);
  int col = 0, npos = 0;
  for (int pass = 0; pass < 2; ++pass)
    for (int b = 0; b < d; ++b)
      if ((eps[b] > 0) == (pass == 0)) {
        f.vectors.col(col++) = basis[b];
        npos += pass == 0;
      }
  if (npos != chart.sig.p) throw ContractViolation("metric signature differs from chart " + chart.name);
  RVec e(d);
  for (int a = 0; a < d; ++a) e[a] = a < npos ? 1.0 : -1.0;
  f.coframe = e.asDiagonal() * f.vectors.transpose() * g;
  const int o = f.coframe.determinant() > 0 ? 1 : -1;
  f.sig = Signature(chart.sig.p, chart.sig.q, o * chart.sig.orientation);
  return f;
}

Multivector to_frame(const Frame& frame, const Multivector& coord_form) {
  // dx^mu = vectors(mu, a) e^a
  return transform_forms(coord_form, frame.vectors.transpose(), frame.sig);
}

Multivector from_frame(const Frame& frame, const Multivector& frame_form) {
  Signature coord = frame.sig;
  const int o = frame.coframe.determinant() > 0 ? 1 : -1;
  coord.orientation = o * frame.sig.orientation;
  return transform_forms(frame_form, frame.coframe.transpose(), coord);
}

Multivector coordinate_basis(const MetricChart& chart, Blade b, double c) {
  return Multivector::basis(chart.sig, b, c);
}

Multivector coordinate_one_form(const MetricChart& chart, const RVec& comps) {
  return Multivector::one_form(chart.sig, std::span<const double>(comps.data(), comps.size()));
}

Multivector partial_derivative(const FormField& field, const RVec& x, int mu, double h) {
  return d1(field, x, mu, h);
}

Multivector exterior_derivative(const FormField& field, const MetricChart& chart, const RVec& x) {
  Multivector out(chart.sig);
  for (int m = 0; m < chart.dim(); ++m)
    out += wedge(coordinate_basis(chart, Blade{1} << m), partial_derivative(field, x, m, chart.h_fd()));
  return out;
}

Multivector covariant_derivative_form(const FormField& field, const MetricChart& chart, const RVec& x,
                                      const RVec& w) {
  const int d = chart.dim();
  const Christoffel G = christoffel(chart, x);
  const Multivector a = field(x);
  std::vector<Multivector> iota(d);
  for (int r = 0; r < d; ++r) iota[r] = interior(r, a);
  Multivector out(chart.sig);
  for (int m = 0; m < d; ++m) {
    if (w[m] == 0.0) continue;
    Multivector t = partial_derivative(field, x, m, chart.h_fd());
    for (int n = 0; n < d; ++n) {
      Multivector acc(chart.sig);
      bool any = false;
      for (int r = 0; r < d; ++r) {
        if (G(r, m, n) == 0.0) continue;
        acc += G(r, m, n) * iota[r];
        any = true;
      }
      if (any) t -= wedge(coordinate_basis(chart, Blade{1} << n), acc);
    }
    out += w[m] * t;
  }
  return out;
}

Multivector hodge_field(const Multivector& coord_form, const MetricChart& chart, const RVec& x) {
  const Frame f = orthonormal_frame(chart, x);
  return from_frame(f, hodge_star(to_frame(f, coord_form)));
}

Multivector hodge_field(const FormField& field, const MetricChart& chart, const RVec& x) {
  return hodge_field(field(x), chart, x);
}

Multivector volume_field(const MetricChart& chart, const RVec& x) {
  const double vol = std::sqrt(std::abs(metric(chart, x).determinant()));
  return coordinate_basis(chart, full_blade(chart.dim()), chart.sig.orientation * vol);
}

cplx form_pairing(const Multivector& a, const Multivector& b, const MetricChart& chart, const RVec& x) {
  const Frame f = orthonormal_frame(chart, x);
  return metric_pairing(to_frame(f, a), to_frame(f, b));
}

Multivector flat(const MetricChart& chart, const RVec& x, const RVec& w) {
  return coordinate_one_form(chart, metric(chart, x) * w);
}

RVec sharp(const MetricChart& chart, const RVec& x, const Multivector& one_form) {
  const int d = chart.dim();
  RVec c(d);
  for (int m = 0; m < d; ++m) c[m] = one_form[Blade{1} << m].real();
  return metric(chart, x).inverse() * c;
}

RMat form_square(const Multivector& H, const MetricChart& chart, const RVec& x) {
  const int d = chart.dim();
  const Frame f = orthonormal_frame(chart, x);
  std::vector<Multivector> iota(d);
  for (int m = 0; m < d; ++m) iota[m] = to_frame(f, interior(m, H));
  RMat out(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = m; n < d; ++n) out(m, n) = out(n, m) = metric_pairing(iota[m], iota[n]).real();
  return out;
}

RVec gradient(const ScalarField& f, const RVec& x, double h) {
  RVec out(x.size());
  for (int m = 0; m < x.size(); ++m) out[m] = d1(f, x, m, h);
  return out;
}

RMat hessian(const ScalarField& f, const MetricChart& chart, const RVec& x) {
  const int d = chart.dim();
  const double h = chart.h_outer();
  const Christoffel G = christoffel(chart, x);
  const RVec df = gradient(f, x, chart.h_fd());
  RMat H(d, d);
  const double f0 = f(x);
  for (int i = 0; i < d; ++i) {
    RVec xp1 = x, xm1 = x, xp2 = x, xm2 = x;
    xp1[i] += h;
    xm1[i] -= h;
    xp2[i] += 2 * h;
    xm2[i] -= 2 * h;
    H(i, i) = (-f(xm2) + 16 * f(xm1) - 30 * f0 + 16 * f(xp1) - f(xp2)) / (12 * h * h);
    for (int j = i + 1; j < d; ++j) {
      auto dj = [&](const RVec& y) { return d1(f, y, j, h); };
      H(i, j) = H(j, i) = d1(dj, x, i, h);
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) H(i, j) -= G(k, i, j) * df[k];
  return H;
}

double laplacian_star(const ScalarField& f, const MetricChart& chart, const RVec& x) {
  return -(metric(chart, x).inverse() * hessian(f, chart, x)).trace();
}

double Residual::max() const {
  double m = 0;
  for (const auto& [k, v] : parts) m = std::max(m, v);
  return m;
}

void Residual::merge_max(const Residual& o) {
  for (const auto& [k, v] : o.parts) parts[k] = std::max(parts.count(k) ? parts[k] : 0.0, v);
  tol = std::max(tol, o.tol);
}

Residual einstein_maxwell_residual(const MetricChart& chart, const FormField& F, double Lambda, double e,
                                   const RVec& x) {
  const RMat g = metric(chart, x);
  const Curvature C = curvature(chart, x);
  const Multivector Fx = F(x);
  const RMat FF = form_square(Fx, chart, x);
  const double F2 = form_pairing(Fx, Fx, chart, x).real();
  const RMat E = C.ricci - 0.5 * C.scalar * g - Lambda * g - e * e * FF + 0.5 * e * e * F2 * g;
  const double scale = std::max({1.0, C.ricci.cwiseAbs().maxCoeff(), e * e * FF.cwiseAbs().maxCoeff()});
  Residual r;
  r.tol = 1e-6;
  r.parts["einstein"] = E.cwiseAbs().maxCoeff() / scale;
  auto starF = [&](const RVec& y) { return hodge_field(F, chart, y); };
  const double fs = std::max(1.0, Fx.norm_inf());
  r.parts["maxwell"] = exterior_derivative(starF, chart, x).norm_inf() / fs;
  r.parts["closure"] = exterior_derivative(F, chart, x).norm_inf() / fs;
  return r;
}

Residual sugra6d_residual(const MetricChart& chart, const FormField& H, int mu, const RVec& x) {
  if (chart.dim() != 6 || chart.sig.q != 1) throw ContractViolation("sugra6d_residual needs a (5,1) chart");
  const Curvature C = curvature(chart, x);
  const Multivector Hx = H(x);
  const RMat HH = form_square(Hx, chart, x);
  const double scale = std::max({1.0, C.ricci.cwiseAbs().maxCoeff(), HH.cwiseAbs().maxCoeff()});
  const double hs = std::max(1.0, Hx.norm_inf());
  Residual r;
  r.tol = 1e-6;
  r.parts["einstein"] = (C.ricci - 0.5 * HH).cwiseAbs().maxCoeff() / scale;
  r.parts["self_duality"] = (hodge_field(Hx, chart, x) - static_cast<double>(mu) * Hx).norm_inf() / hs;
  r.parts["closure"] = exterior_derivative(H, chart, x).norm_inf() / hs;
  return r;
}

Residual parallel_square_residual(const FormField& alpha, const SymbolField& a, const MetricChart& chart,
                                  const RVec& x, const ParallelSquareOptions& opt) {
  const int d = chart.dim();
  if (d % 2 == 1 && opt.ell == 0) throw ContractViolation("odd dimension needs ell = +-1");
  const Frame f = orthonormal_frame(chart, x);
  const Multivector af = to_frame(f, alpha(x));
  const double scale = std::max(af.norm(), 1e-300);
  auto prod = [&](const Multivector& u, const Multivector& v) { return algebra_product(u, v, opt.ell); };
  Residual r;
  r.tol = 1e-6;
  double worst = 0;
  for (int m = 0; m < d; ++m) {
    const RVec w = RVec::Unit(d, m);
    const Multivector nab = to_frame(f, covariant_derivative_form(alpha, chart, x, w));
    const Multivector aw = to_frame(f, a(x, w));
    const Multivector tw = adjoint_twist(opt.conjugate ? aw.conj() : aw, opt.s);
    const Multivector res = nab - prod(aw, af) - prod(af, tw);
    worst = std::max(worst, res.norm() / scale);
  }
  r.parts["parallel"] = worst;
  double cons = 0;
  for (const auto& q : opt.constraints) cons = std::max(cons, prod(to_frame(f, q(x)), af).norm() / scale);
  if (!opt.constraints.empty()) r.parts["constraints"] = cons;
  return r;
}

std::vector<RVec> sample_points(const MetricChart& chart, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RVec> out;
  const int d = chart.dim();
  for (int k = 0; k < n; ++k) {
    RVec x(d);
    for (int i = 0; i < d; ++i) {
      const double lo = chart.lo[i] + chart.margin();
      const double hi = chart.hi[i] - chart.margin();
      if (hi <= lo) throw ContractViolation("chart domain narrower than the FD margin");
      x[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace spinform
