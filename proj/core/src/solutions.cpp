#include "spinform/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinform/verifier.hpp"

namespace spinform {

namespace {

constexpr double kPi = std::numbers::pi;

double getp(const Params& kv, const std::string& k, double def) {
  auto it = kv.find(k);
  return it == kv.end() ? def : it->second;
}

Multivector one_form_d(const Signature& sig, std::initializer_list<std::pair<int, double>> comps) {
  Multivector a(sig);
  for (auto [i, c] : comps) a[Blade{1} << i] += c;
  return a;
}

double rel(double v, double scale) { return std::abs(v) / std::max(1.0, std::abs(scale)); }

double sq_norm(const RVec& df, const RMat& g) { return df.dot(g.inverse() * df); }

RMat outer(const RVec& a) { return a * a.transpose(); }

double max_abs(const RMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Hopf one-form sin^2(eta) d xi1 + cos^2(eta) d xi2 in coordinates (eta, xi1, xi2) at offset o.
// chir = -1 gives the Hopf form of the opposite orientation.
Multivector hopf_form(const Signature& sig, const RVec& x, int o, int chir = 1) {
  const double s = std::sin(x[o]), c = std::cos(x[o]);
  return one_form_d(sig, {{o + 1, s * s}, {o + 2, chir * c * c}});
}

// d(w(x0) * hopf_form), with w' = wp
Multivector hopf_form_d(const Signature& sig, const RVec& x, int o, int chir, double w, double wp) {
  const double s = std::sin(x[o]), c = std::cos(x[o]);
  Multivector out = wedge(one_form_d(sig, {{0, wp}}), hopf_form(sig, x, o, chir));
  out += wedge(one_form_d(sig, {{o, 2 * s * c * w}}), one_form_d(sig, {{o + 1, 1.0}, {o + 2, -chir * 1.0}}));
  return out;
}

RMat hopf_metric(const RVec& x, int o) {
  RMat g = RMat::Zero(3, 3);
  const double s = std::sin(x[o]), c = std::cos(x[o]);
  g(0, 0) = 1;
  g(1, 1) = s * s;
  g(2, 2) = c * c;
  return g;
}

}  // namespace

Multivector embed_transverse(const Multivector& a, const Signature& sig6) {
  Multivector out(sig6);
  for (Blade b = 0; b < a.size(); ++b)
    if (a[b] != cplx{}) out[b << 2] = a[b];
  return out;
}

MetricChart conformal_chart(const MetricChart& chart, ScalarField F, double power, std::string name) {
  MetricChart c = chart;
  c.name = name.empty() ? chart.name + "_conformal" : std::move(name);
  c.dg = nullptr;
  auto g0 = chart.g;
  c.g = [g0, F, power](const RVec& x) { return (std::exp(power * F(x)) * g0(x)).eval(); };
  return c;
}

// ---------------------------------------------------------------- Freedman

FreedmanParams freedman_params(const Params& kv) {
  FreedmanParams p;
  p.R = getp(kv, "R", p.R);
  p.c1 = getp(kv, "c1", p.c1);
  p.c2 = getp(kv, "c2", p.c2);
  p.c3 = getp(kv, "c3", p.c3);
  p.cc = getp(kv, "c", p.cc);
  p.e = getp(kv, "e", p.e);
  p.mu = getp(kv, "mu", p.mu) < 0 ? -1 : 1;
  p.lambda_sign = getp(kv, "lambda_sign", p.lambda_sign) < 0 ? -1 : 1;
  p.perturb_H = getp(kv, "perturb_H", p.perturb_H);
  return p;
}

FreedmanSolution freedman_chart(const FreedmanParams& p) {
  if (!(p.R > 0)) throw ContractViolation("freedman: R must be positive");
  if (p.e == 0) throw ContractViolation("freedman: e must be nonzero");
  FreedmanSolution s;
  s.params = p;
  const double R = p.R;
  const double lam = p.lambda_sign / std::abs(p.e * R);
  s.lambda_I = lam;
  s.Lambda = -0.5 * p.e * p.e * lam * lam;
  const double mu = p.mu;

  auto psi = [p](double th, double ph) {
    return p.c1 * std::sin(th) * std::cos(ph) + p.c2 * std::sin(th) * std::sin(ph) + p.c3 * std::cos(th);
  };
  auto psi_th = [p](double th, double ph) {
    return p.c1 * std::cos(th) * std::cos(ph) + p.c2 * std::cos(th) * std::sin(ph) - p.c3 * std::sin(th);
  };
  auto psi_ph = [p](double th, double ph) {
    return -p.c1 * std::sin(th) * std::sin(ph) + p.c2 * std::sin(th) * std::cos(ph);
  };
  auto profile = [=](double th, double ph) {
    const double v = psi(th, ph);
    return -(1.0 + p.perturb_H) * (v * v / (R * R) + p.cc) / (lam * lam);
  };
  s.psi = [=](const RVec& x) { return psi(x[x.size() - 2], x[x.size() - 1]); };
  s.profile = [=](const RVec& x) { return profile(x[2], x[3]); };

  MetricChart& c = s.chart;
  c.name = "freedman";
  c.sig = Signature(3, 1, 1);
  c.g = [=](const RVec& x) {
    const double th = x[2], ph = x[3];
    // A = mu / lambda_I * *_h d psi, *_h d psi = sin(th) psi_th dphi - psi_ph / sin(th) dtheta
    const double At = -mu / lam * psi_ph(th, ph) / std::sin(th);
    const double Ap = mu / lam * std::sin(th) * psi_th(th, ph);
    RMat g = RMat::Zero(4, 4);
    g(0, 0) = profile(th, ph);
    g(0, 1) = g(1, 0) = 1;
    g(0, 2) = g(2, 0) = At;
    g(0, 3) = g(3, 0) = Ap;
    g(2, 2) = R * R;
    g(3, 3) = R * R * std::sin(th) * std::sin(th);
    return g;
  };
  c.lo = RVec(4);
  c.hi = RVec(4);
  c.lo << -1, -1, 0.3, 0.0;
  c.hi << 1, 1, kPi - 0.3, 2 * kPi;
  c.scale = 1.0;

  s.sphere.name = "round_sphere";
  s.sphere.sig = Signature(2, 0, 1);
  s.sphere.g = [R](const RVec& y) {
    RMat g = RMat::Zero(2, 2);
    g(0, 0) = R * R;
    g(1, 1) = R * R * std::sin(y[0]) * std::sin(y[0]);
    return g;
  };
  s.sphere.lo = c.lo.tail(2);
  s.sphere.hi = c.hi.tail(2);

  const Signature sig = c.sig;
  s.F = [=](const RVec& x) {
    const double th = x[2], ph = x[3];
    Multivector F(sig);
    F[0b0101] = -psi_th(th, ph);
    F[0b1001] = -psi_ph(th, ph);
    F[0b1100] = mu * lam * R * R * std::sin(th);
    return F;
  };
  s.u = [sig](const RVec&) { return Multivector::basis(sig, 0b0001); };
  return s;
}

double freedman_eigen_residual(const FreedmanSolution& s, const RVec& y) {
  const double R = s.params.R;
  return laplacian_star(s.psi, s.sphere, y) - 2.0 * s.psi(y) / (R * R);
}

Residual freedman_gaugino_residual(const FreedmanSolution& s, const RVec& x) {
  Residual r;
  r.tol = 1e-8;
  const Multivector F = s.F(x);
  const Multivector u = s.u(x);
  const RVec us = sharp(s.chart, x, u);
  Multivector iu(F.sig());
  for (int m = 0; m < 4; ++m) iu += us[m] * interior(m, F);
  const double scale = std::max(1.0, F.norm_inf());
  r.parts["F(u#)"] = iu.norm_inf() / scale;
  const Multivector lhs = wedge(F, u) + s.params.mu * s.lambda_I * hodge_field(u, s.chart, x);
  r.parts["F^u + mu lambda *u"] = lhs.norm_inf() / scale;
  return r;
}

double freedman_flux(const FreedmanSolution& s, int n) {
  // Simpson in theta, trapezoid in phi (periodic integrand)
  if (n % 2) ++n;
  const double hth = kPi / n, hph = 2 * kPi / n;
  double total = 0;
  RVec x = RVec::Zero(4);
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    x[2] = i * hth;
    double row = 0;
    for (int j = 0; j < n; ++j) {
      x[3] = j * hph;
      row += s.F(x)[0b1100].real();
    }
    total += w * row * hph;
  }
  return total * hth / 3.0;
}

double freedman_chern_number(const FreedmanSolution& s, int n) { return freedman_flux(s, n) / (2 * kPi); }

// ---------------------------------------------------------------- Kundt / 6d

SixDSolution kundt_solution(const KundtData& data, std::string family) {
  if (data.frak_h.dim() != 4 || data.frak_h.sig.q != 0)
    throw ContractViolation("kundt_solution needs a Riemannian four-dimensional transverse chart");
  SixDSolution s;
  s.family = std::move(family);
  s.N = data;
  MetricChart& c = s.chart;
  c.name = s.family;
  c.sig = Signature(5, 1, 1);
  const auto gN = data.frak_h.g;
  const auto F = data.F;
  const auto Hbar = data.Hbar;
  c.g = [=](const RVec& x) {
    const RVec y = x.tail(4);
    const double eF = std::exp(F(y));
    RMat g = RMat::Zero(6, 6);
    g(0, 0) = (Hbar ? Hbar(y) : 0.0) * eF;
    g(0, 1) = g(1, 0) = eF;
    g.bottomRightCorner(4, 4) = gN(y) / eF;
    return g;
  };
  c.lo = RVec(6);
  c.hi = RVec(6);
  c.lo << -1, -1, data.frak_h.lo;
  c.hi << 1, 1, data.frak_h.hi;
  c.scale = data.frak_h.scale;
  const Signature sig = c.sig;
  const KundtData d = data;
  s.H = [=](const RVec& x) {
    const RVec y = x.tail(4);
    const Multivector hb = d.Hb(y);
    const Multivector dual = hodge_field(hb, d.frak_h, y);
    return embed_transverse(hb, sig) + d.mu * std::exp(2 * d.F(y)) *
                                           wedge(Multivector::basis(sig, 0b11), embed_transverse(dual, sig));
  };
  s.u = [=](const RVec& x) { return Multivector::basis(sig, 0b01, std::exp(F(x.tail(4)))); };
  return s;
}

SixDSolution black_brane_chart(double m, double Hbar, int mu) {
  if (!(m > 0)) throw ContractViolation("black brane: m must be positive");
  KundtData k;
  MetricChart& h = k.frak_h;
  h.name = "flat_R4_hopf";
  h.sig = Signature(4, 0, 1);
  // coordinates (eta, xi1, xi2, r)
  h.g = [](const RVec& y) {
    RMat g = RMat::Zero(4, 4);
    g.topLeftCorner(3, 3) = y[3] * y[3] * hopf_metric(y, 0);
    g(3, 3) = 1;
    return g;
  };
  h.lo = RVec(4);
  h.hi = RVec(4);
  h.lo << 0.2, 0.0, 0.0, 0.5;
  h.hi << kPi / 2 - 0.2, 2 * kPi, 2 * kPi, 3.0;
  k.F = [m](const RVec& y) { return -std::log1p(m / (y[3] * y[3])); };
  const Signature sN = h.sig;
  k.Hb = [m, sN](const RVec& y) {
    return Multivector::basis(sN, 0b0111, 2 * m * std::sin(y[0]) * std::cos(y[0]));
  };
  k.Hbar = [Hbar](const RVec&) { return Hbar; };
  k.f = [m, mu](const RVec& y) { return -mu * m / (y[3] * y[3] + m); };
  k.mu = mu;
  return kundt_solution(k, "black_brane");
}

double brane_duality_residual(const SixDSolution& s, const RVec& y) {
  const KundtData& k = s.N;
  const Multivector dual = hodge_field(k.Hb(y), k.frak_h, y);
  const RVec dF = gradient(k.F, y, k.frak_h.h_fd());
  const Multivector rhs = (k.mu * std::exp(-k.F(y))) * coordinate_one_form(k.frak_h, dF);
  return (dual + rhs).norm_inf() / std::max(1.0, dual.norm_inf());
}

double quasi_susy_residual(const SixDSolution& s, const RVec& x) {
  const MetricChart& c = s.chart;
  const int d = c.dim();
  const RVec us = sharp(c, x, s.u(x));
  const Multivector H = s.H(x);
  Multivector iH(c.sig);
  for (int m = 0; m < d; ++m) iH += us[m] * interior(m, H);
  RMat T(d, d);
  for (int w = 0; w < d; ++w) {
    const Multivector nab = covariant_derivative_form(s.u, c, x, RVec::Unit(d, w));
    for (int z = 0; z < d; ++z) T(w, z) = nab[Blade{1} << z].real();
  }
  double worst = 0;
  for (int w = 0; w < d; ++w)
    for (int z = w + 1; z < d; ++z) {
      const double skew = 0.5 * (T(w, z) - T(z, w));
      const double h = iH[(Blade{1} << w) | (Blade{1} << z)].real();
      worst = std::max(worst, std::abs(skew + 0.5 * h));  // H(w, u#, z) = -(iota_u# H)(w, z)
    }
  return worst / std::max(1.0, max_abs(T));
}

// ---------------------------------------------------------------- radial ODE

double radial_constraint(const RadialState& s, const RadialParams& p) {
  return 3 * s.Kp * s.Kp - 2 * s.Fp * s.Fp + 2 * p.e * p.e * std::exp(2 * (s.F - s.K)) - 6 * p.lambda;
}

RadialDerivs radial_rhs(const RadialState& s, const RadialParams& p) {
  if (!std::isfinite(s.K) || s.K < -700) throw RadialError("warp factor collapsed");
  RadialDerivs d;
  d.Kp = s.Kp;
  d.Kpp = 2 * p.lambda - s.Kp * s.Kp;
  d.Fp = s.Fp;
  d.Fpp = p.e * p.e * std::exp(2 * (s.F - s.K)) - s.Kp * s.Fp;
  d.rhop = std::exp(-s.K);
  d.Hbarp = s.Hbarp;
  d.Hbarpp = -s.Kp * s.Hbarp;
  return d;
}

double RadialClosedForm::K(double r) const { return std::log(p.c * std::cos(k * r)); }
double RadialClosedForm::Kp(double r) const { return -k * std::tan(k * r); }
double RadialClosedForm::rho(double r) const {
  return std::log(std::abs(1.0 / std::cos(k * r) + std::tan(k * r))) / (p.c * k);
}
double RadialClosedForm::F(double r) const {
  const double sE = std::sqrt(E);
  return -std::log(p.e / sE * std::sinh(sE * (rho(r) - rho_star)));
}
double RadialClosedForm::Fp(double r) const {
  const double sE = std::sqrt(E);
  return -std::exp(-K(r)) * sE / std::tanh(sE * (rho(r) - rho_star));
}
double RadialClosedForm::Hbar(double r) const { return p.m1 * rho(r) + p.m2; }
double RadialClosedForm::f_potential(double r, int mu) const {
  const double sE = std::sqrt(E);
  return -mu * sE / p.e / std::tanh(sE * (rho(r) - rho_star));
}
double RadialClosedForm::r_max() const { return kPi / (2 * k); }

RadialClosedForm radial_closed_form(const RadialParams& p, double r0, double F0) {
  if (!(p.lambda < 0)) throw RadialError("closed forms need lambda < 0");
  if (!(p.c > 0)) throw RadialError("closed forms need c > 0");
  if (p.e <= 0) throw RadialError("closed forms need e > 0");
  RadialClosedForm cf;
  cf.p = p;
  cf.k = std::sqrt(2 * std::abs(p.lambda));
  cf.E = 3 * p.c * p.c * std::abs(p.lambda);
  if (std::abs(r0) >= cf.r_max()) throw RadialError("r0 outside (-pi/2k, pi/2k)");
  const double sE = std::sqrt(cf.E);
  cf.rho_star = cf.rho(r0) - std::asinh(sE / p.e * std::exp(-F0)) / sE;
  return cf;
}

RadialState radial_initial(const RadialParams& p, const RadialInit& init) {
  RadialState s;
  s.r = init.r0;
  s.F = init.F0;
  if (p.lambda < 0) {
    if (!(p.c > 0)) throw RadialError("lambda < 0 needs c > 0");
    const double k = std::sqrt(2 * std::abs(p.lambda));
    if (std::abs(init.r0) * k >= kPi / 2) throw RadialError("r0 outside the warp domain");
    s.K = std::log(p.c * std::cos(k * init.r0));
    s.Kp = -k * std::tan(k * init.r0);
    s.rho = std::log(std::abs(1.0 / std::cos(k * init.r0) + std::tan(k * init.r0))) / (p.c * k);
  } else {
    s.K = init.K0;
    s.Kp = init.Kp0;
    s.rho = 0;
  }
  if (init.Fp0) {
    s.Fp = *init.Fp0;
  } else {
    const double disc = 3 * s.Kp * s.Kp + 2 * p.e * p.e * std::exp(2 * (s.F - s.K)) - 6 * p.lambda;
    if (disc < 0) throw RadialError("constraint has no real solution for F' (discriminant " + std::to_string(disc) + ")");
    s.Fp = (init.branch < 0 ? -1.0 : 1.0) * std::sqrt(0.5 * disc);
  }
  s.C = radial_constraint(s, p);
  if (std::abs(s.C) > 1e-12 * std::max(1.0, std::abs(6 * p.lambda) + 3 * s.Kp * s.Kp))
    throw RadialError("initial data violates the constraint: C = " + std::to_string(s.C));
  if (p.lambda < 0) {
    const double E = std::exp(2 * s.K) * s.Fp * s.Fp - p.e * p.e * std::exp(2 * s.F);
    if (!(E > 0)) throw RadialError("Liouville energy E must be positive for lambda < 0");
  }
  s.Hbar = p.m1 * s.rho + p.m2;
  s.Hbarp = p.m1 * std::exp(-s.K);
  return s;
}

namespace {

RadialState advance(const RadialState& s, const RadialDerivs& d, double h) {
  RadialState o = s;
  o.r += h;
  o.K += h * d.Kp;
  o.Kp += h * d.Kpp;
  o.F += h * d.Fp;
  o.Fp += h * d.Fpp;
  o.rho += h * d.rhop;
  o.Hbar += h * d.Hbarp;
  o.Hbarp += h * d.Hbarpp;
  return o;
}

bool finite(const RadialState& s) {
  return std::isfinite(s.K) && std::isfinite(s.Kp) && std::isfinite(s.F) && std::isfinite(s.Fp) &&
         std::isfinite(s.rho) && std::isfinite(s.Hbar) && std::isfinite(s.Hbarp);
}

}  // namespace

RadialTrajectory radial_integrate(const RadialState& init, const RadialParams& p, double r1, double step) {
  if (!(step > 0)) throw ContractViolation("step must be positive");
  RadialTrajectory tr;
  RadialState s = init;
  s.C = radial_constraint(s, p);
  tr.states.push_back(s);
  tr.max_abs_C = std::abs(s.C);
  const double dir = r1 >= init.r ? 1.0 : -1.0;
  const long n = std::lround(std::abs(r1 - init.r) / step);
  const double h = n ? dir * std::abs(r1 - init.r) / n : 0.0;
  for (long i = 0; i < n; ++i) {
    try {
      const RadialDerivs k1 = radial_rhs(s, p);
      const RadialDerivs k2 = radial_rhs(advance(s, k1, h / 2), p);
      const RadialDerivs k3 = radial_rhs(advance(s, k2, h / 2), p);
      const RadialDerivs k4 = radial_rhs(advance(s, k3, h), p);
      RadialDerivs k;
      k.Kp = (k1.Kp + 2 * k2.Kp + 2 * k3.Kp + k4.Kp) / 6;
      k.Kpp = (k1.Kpp + 2 * k2.Kpp + 2 * k3.Kpp + k4.Kpp) / 6;
      k.Fp = (k1.Fp + 2 * k2.Fp + 2 * k3.Fp + k4.Fp) / 6;
      k.Fpp = (k1.Fpp + 2 * k2.Fpp + 2 * k3.Fpp + k4.Fpp) / 6;
      k.rhop = (k1.rhop + 2 * k2.rhop + 2 * k3.rhop + k4.rhop) / 6;
      k.Hbarp = (k1.Hbarp + 2 * k2.Hbarp + 2 * k3.Hbarp + k4.Hbarp) / 6;
      k.Hbarpp = (k1.Hbarpp + 2 * k2.Hbarpp + 2 * k3.Hbarpp + k4.Hbarpp) / 6;
      RadialState next = advance(s, k, h);
      next.r = init.r + (i + 1) * h;
      if (!finite(next) || next.K < -18.0) {
        tr.truncated = true;
        tr.reason = "warp factor left the domain at r = " + std::to_string(next.r);
        break;
      }
      next.C = radial_constraint(next, p);
      tr.max_abs_C = std::max(tr.max_abs_C, std::abs(next.C));
      tr.states.push_back(next);
      s = next;
    } catch (const RadialError& e) {
      tr.truncated = true;
      tr.reason = e.what();
      break;
    }
  }
  return tr;
}

SixDSolution radial_family_chart(const RadialFamilyParams& p) {
  const RadialClosedForm cf = radial_closed_form(p.radial, p.r0, p.F0);
  if (!(p.r1 > p.r0) || p.r1 >= cf.r_max()) throw ContractViolation("radial family: need r0 < r1 < pi/2k");
  const double a = std::sqrt(std::abs(p.radial.lambda) / 2);
  KundtData k;
  MetricChart& h = k.frak_h;
  h.name = "radial_transverse";
  h.sig = Signature(4, 0, 1);
  // coordinates (x, y, z, r); h_X = dx^2 + e^{2ax}(dy^2 + dz^2) has Ric = lambda h_X
  h.g = [cf, a](const RVec& y) {
    RMat g = RMat::Zero(4, 4);
    const double eK = std::exp(cf.K(y[3]));
    g(0, 0) = eK;
    g(1, 1) = g(2, 2) = eK * std::exp(2 * a * y[0]);
    g(3, 3) = eK;
    return g;
  };
  h.lo = RVec(4);
  h.hi = RVec(4);
  h.lo << -1, -1, -1, p.r0;
  h.hi << 1, 1, 1, p.r1;
  const Signature sN = h.sig;
  const double e = p.radial.e;
  k.Hb = [sN, a, e](const RVec& y) { return Multivector::basis(sN, 0b0111, e * std::exp(2 * a * y[0])); };
  k.F = [cf](const RVec& y) { return cf.F(y[3]); };
  k.Hbar = [cf](const RVec& y) { return cf.Hbar(y[3]); };
  const int mu = p.mu;
  k.f = [cf, mu](const RVec& y) { return cf.f_potential(y[3], mu); };
  k.mu = mu;
  return kundt_solution(k, "radial");
}

// ---------------------------------------------------------------- reduced system

Residual reduced_system_residual(const KundtData& k, const RVec& y) {
  const MetricChart& c = k.frak_h;
  const RMat g = metric(c, y);
  const Curvature C = curvature(c, y);
  const RVec dF = gradient(k.F, y, c.h_fd());
  const Multivector Hb = k.Hb(y);
  const RMat HH = form_square(Hb, c, y);
  const double H2 = form_pairing(Hb, Hb, c, y).real();
  const double e2F = std::exp(2 * k.F(y));
  Residual r;
  r.tol = 1e-6;
  const RMat rhs = outer(dF) + e2F * (HH - H2 * g);
  r.parts["ricci"] = max_abs(C.ricci - rhs) / std::max({1.0, max_abs(C.ricci), max_abs(rhs)});
  const double lap = laplacian_star(k.F, c, y);
  r.parts["dilaton"] = rel(lap + e2F * H2, std::max(std::abs(lap), e2F * H2));
  auto flux = [&](const RVec& z) { return std::exp(2 * k.F(z)) * hodge_field(k.Hb(z), c, z); };
  r.parts["maxwell"] = exterior_derivative(flux, c, y).norm_inf() / std::max(1.0, flux(y).norm_inf());
  if (k.Hbar) r.parts["harmonic"] = rel(laplacian_star(k.Hbar, c, y), 1.0);

  const MetricChart hc = conformal_chart(c, k.F, -1.0, c.name + "_h");
  const double sh = curvature(hc, y).scalar;
  const double H2h = form_pairing(Hb, Hb, hc, y).real();
  const double dF2h = sq_norm(dF, metric(hc, y));
  r.parts["scalar_identity"] = rel(sh - 2 * H2h + 0.5 * dF2h, std::max(std::abs(sh), 2 * H2h));
  return r;
}

WavefrontData to_wavefront(const KundtData& k) {
  WavefrontData w;
  w.h = conformal_chart(k.frak_h, k.F, -1.0, k.frak_h.name + "_h");
  w.Hb = k.Hb;
  w.F = k.F;
  auto Hbar = k.Hbar;
  auto F = k.F;
  w.calH = [Hbar, F](const RVec& y) { return (Hbar ? Hbar(y) : 0.0) * std::exp(F(y)); };
  return w;
}

KundtData from_wavefront(const WavefrontData& w, int mu) {
  KundtData k;
  k.frak_h = conformal_chart(w.h, w.F, 1.0, w.h.name + "_frak");
  k.Hb = w.Hb;
  k.F = w.F;
  auto calH = w.calH;
  auto F = w.F;
  k.Hbar = [calH, F](const RVec& y) { return calH(y) * std::exp(-F(y)); };
  k.mu = mu;
  return k;
}

WavefrontValues wavefront_h_residual(const WavefrontData& w, const RVec& y) {
  const MetricChart& c = w.h;
  const RMat g = metric(c, y);
  const RVec dF = gradient(w.F, y, c.h_fd());
  const RVec dH = gradient(w.calH, y, c.h_fd());
  const Multivector Hb = w.Hb(y);
  const double H2 = form_pairing(Hb, Hb, c, y).real();
  const double dF2 = sq_norm(dF, g);
  const double dHdF = dH.dot(g.inverse() * dF);
  const double calH = w.calH(y);
  WavefrontValues v;
  const double lapH = laplacian_star(w.calH, c, y);
  const double lapF = laplacian_star(w.F, c, y);
  v.profile = lapH + dHdF - calH * dF2 + calH * H2;
  v.dilaton = lapF - dF2 + H2;
  const Curvature C = curvature(c, y);
  const RMat E = C.ricci - hessian(w.F, c, y) - 0.5 * outer(dF) - 0.5 * (2 * form_square(Hb, c, y) - H2 * g);
  v.res.tol = 1e-6;
  v.res.parts["profile"] = rel(v.profile, std::max(std::abs(lapH), 1.0));
  v.res.parts["dilaton"] = rel(v.dilaton, std::max(std::abs(lapF), 1.0));
  v.res.parts["einstein"] = max_abs(E) / std::max(1.0, max_abs(C.ricci));
  auto flux = [&](const RVec& z) { return std::exp(w.F(z)) * hodge_field(w.Hb(z), c, z); };
  v.res.parts["maxwell"] = exterior_derivative(flux, c, y).norm_inf() / std::max(1.0, flux(y).norm_inf());
  return v;
}

WavefrontValues wavefront_frak_residual(const KundtData& k, const RVec& y) {
  const MetricChart& c = k.frak_h;
  const RMat g = metric(c, y);
  auto F = k.F;
  auto Hbar = k.Hbar;
  ScalarField calH = [F, Hbar](const RVec& z) { return (Hbar ? Hbar(z) : 0.0) * std::exp(F(z)); };
  const RVec dF = gradient(k.F, y, c.h_fd());
  const RVec dH = gradient(calH, y, c.h_fd());
  const Multivector Hb = k.Hb(y);
  const double H2 = form_pairing(Hb, Hb, c, y).real();
  const double e2F = std::exp(2 * k.F(y));
  const double dF2 = sq_norm(dF, g);
  const double dHdF = dH.dot(g.inverse() * dF);
  const double h0 = calH(y);
  WavefrontValues v;
  const double lapH = laplacian_star(calH, c, y);
  const double lapF = laplacian_star(k.F, c, y);
  v.profile = lapH + 2 * dHdF - h0 * dF2 + h0 * e2F * H2;
  v.dilaton = lapF + e2F * H2;
  const Curvature C = curvature(c, y);
  const RMat E = C.ricci - outer(dF) - e2F * (form_square(Hb, c, y) - H2 * g);
  v.res.tol = 1e-6;
  v.res.parts["profile"] = rel(v.profile, std::max(std::abs(lapH), 1.0));
  v.res.parts["dilaton"] = rel(v.dilaton, std::max(std::abs(lapF), 1.0));
  v.res.parts["einstein"] = max_abs(E) / std::max(1.0, max_abs(C.ricci));
  auto flux = [&](const RVec& z) { return std::exp(2 * k.F(z)) * hodge_field(k.Hb(z), c, z); };
  v.res.parts["maxwell"] = exterior_derivative(flux, c, y).norm_inf() / std::max(1.0, flux(y).norm_inf());
  return v;
}

double conformal_cross_residual(const KundtData& k, const RVec& y) {
  const WavefrontValues a = wavefront_h_residual(to_wavefront(k), y);
  const WavefrontValues b = wavefront_frak_residual(k, y);
  const double eF = std::exp(k.F(y));
  return std::max(std::abs(a.profile - eF * b.profile), std::abs(a.dilaton - eF * b.dilaton));
}

GerbeComponents gerbe_components(const SixDSolution& s) {
  const WavefrontData w = to_wavefront(s.N);
  GerbeComponents c;
  c.h = w.h;
  c.F = w.F;
  c.calH = w.calH;
  c.f = s.N.f;
  c.Hb = s.N.Hb;
  c.mu = s.N.mu;
  return c;
}

Residual selfdual_gerbe_check(const GerbeComponents& c, const RVec& y) {
  const MetricChart& h = c.h;
  const Signature sN = h.sig;
  auto zero = [sN](const RVec&) { return Multivector(sN); };
  const FormField alpha = c.alpha ? c.alpha : FormField(zero);
  const FormField dalpha_du = c.dalpha_du ? c.dalpha_du : FormField(zero);
  const FormField Theta = c.Theta ? c.Theta : FormField(zero);
  const FormField A = c.A ? c.A : FormField(zero);
  const ScalarField f = c.f ? c.f : ScalarField([](const RVec&) { return 0.0; });
  const double mu = c.mu;

  auto df_at = [&](const RVec& z) { return coordinate_one_form(h, gradient(f, z, h.h_fd())); };
  auto dalpha_at = [&](const RVec& z) { return exterior_derivative(alpha, h, z); };

  Residual r;
  r.tol = 1e-6;
  const Multivector dal = dalpha_at(y);
  const Multivector lhs = hodge_field(std::exp(c.F(y)) * c.Hb(y) + wedge(A(y), dal), h, y);
  const Multivector rhs = mu * (dalpha_du(y) + df_at(y));
  r.parts["sd_curving"] = (lhs - rhs).norm_inf() / std::max(1.0, lhs.norm_inf());
  r.parts["sd_alpha"] = (hodge_field(dal, h, y) - mu * dal).norm_inf() / std::max(1.0, dal.norm_inf());
  r.parts["closure"] = exterior_derivative(Theta, h, y).norm_inf();

  MetricChart g6;
  g6.name = h.name + "_kundt";
  g6.sig = Signature(5, 1, 1);
  auto hg = h.g;
  auto F = c.F;
  auto calH = c.calH;
  g6.g = [=](const RVec& x) {
    const RVec z = x.tail(4);
    RMat g = RMat::Zero(6, 6);
    const Multivector a = A(z);
    g(0, 0) = calH ? calH(z) : 0.0;
    g(0, 1) = g(1, 0) = std::exp(F(z));
    for (int i = 0; i < 4; ++i) g(0, 2 + i) = g(2 + i, 0) = a[Blade{1} << i].real();
    g.bottomRightCorner(4, 4) = hg(z);
    return g;
  };
  g6.lo = RVec(6);
  g6.hi = RVec(6);
  g6.lo << -1, -1, h.lo;
  g6.hi << 1, 1, h.hi;
  g6.scale = h.scale;
  const Signature s6 = g6.sig;
  const Multivector du = Multivector::basis(s6, 0b01), dv = Multivector::basis(s6, 0b10);
  FormField H6 = [&](const RVec& x) {
    const RVec z = x.tail(4);
    return embed_transverse(c.Hb(z), s6) + wedge(wedge(embed_transverse(dalpha_du(z) + df_at(z), s6), du), dv) +
           wedge(du, embed_transverse(Theta(z), s6)) - wedge(dv, embed_transverse(dalpha_at(z), s6));
  };
  RVec x(6);
  x << 0, 0, y;
  const Multivector Hx = H6(x);
  const double hs = std::max(1.0, Hx.norm_inf());
  r.parts["sd_6d"] = (hodge_field(Hx, g6, x) - mu * Hx).norm_inf() / hs;
  r.parts["closed_6d"] = exterior_derivative(H6, g6, x).norm_inf() / hs;
  return r;
}

// ---------------------------------------------------------------- Killing spinors

std::optional<KillingCase> parse_killing_case(const std::string& s) {
  if (s == "real3d") return KillingCase::real3d;
  if (s == "imag3d") return KillingCase::imag3d;
  if (s == "real4d") return KillingCase::real4d;
  if (s == "imag4d_q0") return KillingCase::imag4d_q0;
  if (s == "imag4d_qpos") return KillingCase::imag4d_qpos;
  return std::nullopt;
}

std::string to_string(KillingCase c) {
  switch (c) {
    case KillingCase::real3d: return "real3d";
    case KillingCase::imag3d: return "imag3d";
    case KillingCase::real4d: return "real4d";
    case KillingCase::imag4d_q0: return "imag4d_q0";
    case KillingCase::imag4d_qpos: return "imag4d_qpos";
  }
  return "?";
}

namespace detail {

KillingWarped killing_warped_signed(KillingCase kase, double lam, int ell, std::optional<MetricChart> base,
                                    int s1, int s2, int s3) {
  if (!(lam > 0)) throw ContractViolation("Killing warped charts take lambda > 0");
  KillingWarped k;
  k.kase = kase;
  k.ell = ell;
  const bool three = kase == KillingCase::real3d || kase == KillingCase::imag3d;
  if (three && ell != 1 && ell != -1) throw ContractViolation("three-dimensional cases need ell = +-1");
  if (!three) k.ell = 0;
  const bool real = kase == KillingCase::real3d || kase == KillingCase::real4d;
  k.lambda = real ? cplx(lam, 0) : cplx(0, lam);
  if (base && kase != KillingCase::imag3d) throw ContractViolation("base metric can only be replaced for imag3d");

  MetricChart& c = k.chart;
  c.name = "killing_" + to_string(kase);
  const double tl = 2 * lam;
  switch (kase) {
    case KillingCase::real3d: {
      const double R = 1.0 / tl;
      c.sig = Signature(3, 0, 1);
      c.g = [R](const RVec& x) { return (R * R * hopf_metric(x, 0)).eval(); };
      c.lo = RVec(3);
      c.hi = RVec(3);
      c.lo << 0.2, 0, 0;
      c.hi << kPi / 2 - 0.2, 2 * kPi, 2 * kPi;
      c.scale = R;
      const Signature sig = c.sig;
      k.forms["theta"] = [=](const RVec& x) { return (s1 * R) * hopf_form(sig, x, 0, s3); };
      k.scalars["r"] = [](const RVec&) { return 1.0; };
      k.hess_field = k.scalars["r"];
      k.hess_coeff = 0;
      break;
    }
    case KillingCase::imag3d:
    case KillingCase::imag4d_q0: {
      const int d = kase == KillingCase::imag3d ? 3 : 4;
      c.sig = Signature(d, 0, 1);
      MetricChart N;
      if (base) {
        N = *base;
        if (N.dim() != d - 1 || N.sig.q != 0) throw ContractViolation("base must be Riemannian of dimension d-1");
      } else {
        N.sig = Signature(d - 1, 0, 1);
        N.g = [d](const RVec&) { return RMat::Identity(d - 1, d - 1).eval(); };
        N.lo = RVec::Constant(d - 1, -1.0);
        N.hi = RVec::Constant(d - 1, 1.0);
      }
      auto gN = N.g;
      c.g = [=](const RVec& x) {
        RMat g = RMat::Zero(d, d);
        g(0, 0) = 1;
        g.bottomRightCorner(d - 1, d - 1) = std::exp(-2 * tl * x[0]) * gN(x.tail(d - 1));
        return g;
      };
      c.lo = RVec(d);
      c.hi = RVec(d);
      c.lo << -0.5 / lam, N.lo;
      c.hi << 0.5 / lam, N.hi;
      c.scale = std::min(1.0, 1.0 / lam);
      const Signature sig = c.sig;
      k.warp = [tl](const RVec& x) { return std::exp(-tl * x[0]); };
      k.scalars["r"] = [tl](const RVec& x) { return std::exp(-tl * x[0]); };
      k.scalars["f"] = [](const RVec&) { return 0.0; };
      k.forms["theta"] = [=](const RVec& x) { return Multivector::basis(sig, 0b1, std::exp(-tl * x[0])); };
      if (d == 4) {
        k.forms["vartheta"] = [=](const RVec& x) { return Multivector::basis(sig, 0b0010, s1 * std::exp(-2 * tl * x[0])); };
        k.forms["omega"] = [=](const RVec& x) { return Multivector::basis(sig, 0b1100, s2 * std::exp(-3 * tl * x[0])); };
      }
      k.hess_field = k.scalars["r"];
      k.hess_coeff = tl * tl;
      break;
    }
    case KillingCase::real4d:
    case KillingCase::imag4d_qpos: {
      const bool sphere = kase == KillingCase::real4d;
      c.sig = Signature(4, 0, 1);
      auto G = [=](double t) { return sphere ? std::sin(tl * t) / tl : std::sinh(tl * t) / tl; };
      c.g = [=](const RVec& x) {
        RMat g = RMat::Zero(4, 4);
        g(0, 0) = 1;
        const double Gt = G(x[0]);
        g.bottomRightCorner(3, 3) = Gt * Gt * hopf_metric(x, 1);
        return g;
      };
      c.lo = RVec(4);
      c.hi = RVec(4);
      const double tmax = sphere ? kPi / tl : 1.0 / lam;
      c.lo << 0.15 * tmax, 0.2, 0, 0;
      c.hi << 0.85 * tmax, kPi / 2 - 0.2, 2 * kPi, 2 * kPi;
      c.scale = std::min(1.0, 1.0 / lam);
      k.warp = [G](const RVec& x) { return G(x[0]); };
      const Signature sig = c.sig;
      const MetricChart chart = c;
      if (sphere) {
        k.scalars["r"] = [](const RVec&) { return 1.0; };
        k.scalars["f"] = [tl](const RVec& x) { return std::cos(tl * x[0]); };
        k.forms["vartheta"] = [=](const RVec& x) { return Multivector::basis(sig, 0b1, std::sin(tl * x[0])); };
        FormField theta = [=](const RVec& x) {
          const double Gt = G(x[0]);
          return (s1 * tl * Gt * Gt) * hopf_form(sig, x, 1, s3);
        };
        k.forms["theta"] = theta;
        k.forms["omega"] = [=](const RVec& x) {
          const double Gt = G(x[0]), Gp = std::cos(tl * x[0]);
          return (-s2 / (2 * tl)) * (s1 * tl) * hopf_form_d(sig, x, 1, s3, Gt * Gt, 2 * Gt * Gp);
        };
        k.hess_field = k.scalars["f"];
        k.hess_coeff = -tl * tl;
      } else {
        k.scalars["f"] = [](const RVec&) { return 1.0; };
        k.scalars["r"] = [tl](const RVec& x) { return std::cosh(tl * x[0]); };
        k.forms["theta"] = [=](const RVec& x) { return Multivector::basis(sig, 0b1, -std::sinh(tl * x[0])); };
        FormField vartheta = [=](const RVec& x) {
          const double Gt = G(x[0]);
          return (s1 * tl * Gt * Gt) * hopf_form(sig, x, 1, s3);
        };
        k.forms["vartheta"] = vartheta;
        k.forms["omega"] = [=](const RVec& x) {
          const double Gt = G(x[0]), Gp = std::cosh(tl * x[0]);
          const Multivector dv = (s1 * tl) * hopf_form_d(sig, x, 1, s3, Gt * Gt, 2 * Gt * Gp);
          return (s2 / (2 * tl)) * hodge_field(dv, chart, x);
        };
        k.hess_field = k.scalars["r"];
        k.hess_coeff = tl * tl;
      }
      break;
    }
  }

  const MetricChart chart = c;
  const auto forms = k.forms;
  const auto scalars = k.scalars;
  const cplx I(0, 1);
  if (three) {
    k.alpha = [=](const RVec& x) { return scalars.at("r")(x) * Multivector::scalar(chart.sig, 1.0) + forms.at("theta")(x); };
  } else {
    k.alpha = [=](const RVec& x) {
      Multivector a = scalars.at("r")(x) * Multivector::scalar(chart.sig, 1.0) + forms.at("theta")(x);
      a += I * forms.at("omega")(x);
      a += I * hodge_field(forms.at("vartheta")(x), chart, x);
      a += scalars.at("f")(x) * volume_field(chart, x);
      return a;
    };
  }
  const cplx lamK = k.lambda;
  k.symbol = [=](const RVec& x, const RVec& w) { return (I * lamK) * flat(chart, x, w); };
  k.options.s = 1;
  k.options.conjugate = true;
  k.options.ell = k.ell;
  return k;
}

}  // namespace detail

KillingWarped killing_warped_chart(KillingCase c, double lambda, int ell, std::optional<MetricChart> base) {
  switch (c) {
    case KillingCase::real3d: return detail::killing_warped_signed(c, lambda, ell, std::move(base), 1, 1, -ell);
    case KillingCase::imag4d_q0: return detail::killing_warped_signed(c, lambda, ell, std::move(base), 1, -1, 1);
    case KillingCase::real4d:
    case KillingCase::imag4d_qpos: return detail::killing_warped_signed(c, lambda, ell, std::move(base), 1, 1, -1);
    default: return detail::killing_warped_signed(c, lambda, ell, std::move(base), 1, 1, 1);
  }
}

Residual killing_hessian_residual(const KillingWarped& k, const RVec& x) {
  const MetricChart& c = k.chart;
  const int d = c.dim();
  const RMat g = metric(c, x);
  const RMat H = hessian(k.hess_field, c, x);
  Residual r;
  r.tol = 1e-8;
  const double scale = std::max(1.0, max_abs(H));
  r.parts["hessian"] = max_abs(H - k.hess_coeff * k.hess_field(x) * g) / scale;
  if (k.warp) {
    // w(t) = field restricted to t; Hess w = w'' dt^2 + w' G' G g_N
    const double h = c.h_outer();
    auto w = [&](double t) {
      RVec y = x;
      y[0] = t;
      return k.hess_field(y);
    };
    auto G = [&](double t) {
      RVec y = x;
      y[0] = t;
      return k.warp(y);
    };
    const double t = x[0];
    const double w1 = (w(t - 2 * h) - 8 * w(t - h) + 8 * w(t + h) - w(t + 2 * h)) / (12 * h);
    const double w2 = (-w(t - 2 * h) + 16 * w(t - h) - 30 * w(t) + 16 * w(t + h) - w(t + 2 * h)) / (12 * h * h);
    const double G1 = (G(t - 2 * h) - 8 * G(t - h) + 8 * G(t + h) - G(t + 2 * h)) / (12 * h);
    const double Gt = G(t);
    RMat expect = RMat::Zero(d, d);
    expect(0, 0) = w2;
    expect.bottomRightCorner(d - 1, d - 1) = (w1 * G1 / Gt) * g.bottomRightCorner(d - 1, d - 1);
    r.parts["warped"] = max_abs(H - expect) / scale;
  }
  return r;
}

Residual killing_system_residual(const KillingWarped& k, const RVec& x) {
  Residual r = parallel_square_residual(k.alpha, k.symbol, k.chart, x, k.options);
  r.tol = 1e-8;
  const Frame f = orthonormal_frame(k.chart, x);
  const NormalForm nf = normal_form(to_frame(f, k.alpha(x)), PairingKind::hermitian, std::nullopt, 1e-8);
  double worst = 0;
  for (const auto& [name, v] : nf.residuals) worst = std::max(worst, v);
  r.parts["normal_form"] = worst;
  return r;
}

// ---------------------------------------------------------------- registry

std::vector<std::string> family_names() {
  return {"black_brane", "freedman", "killing_imag3d", "killing_imag4d_q0", "killing_imag4d_qpos",
          "killing_real3d", "killing_real4d", "radial"};
}

std::vector<std::string> family_param_names(const std::string& family) {
  if (family == "freedman") return {"R", "c1", "c2", "c3", "c", "e", "mu", "lambda_sign", "perturb_H"};
  if (family == "black_brane") return {"m", "Hbar", "mu", "perturb_H"};
  if (family == "radial") return {"lambda", "e", "c", "m1", "m2", "r0", "r1", "F0", "mu", "perturb_H"};
  if (family.rfind("killing_", 0) == 0) return {"lambda", "ell"};
  return {};
}

bool is_family(const std::string& name) {
  const auto names = family_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

template <class Fn>
Residual sweep(const std::vector<RVec>& pts, Fn fn) {
  Residual worst;
  for (const RVec& x : pts) worst.merge_max(fn(x));
  return worst;
}

Residual scalar_residual(const std::string& name, double v, double tol) {
  Residual r;
  r.tol = tol;
  r.parts[name] = v;
  return r;
}

void six_d_checks(FamilyReport& rep, const SixDSolution& s, int points, std::uint64_t seed, double perturb) {
  SixDSolution t = s;
  if (perturb != 0) {
    auto H = s.H;
    t.H = [H, perturb](const RVec& x) { return (1 + perturb) * H(x); };
  }
  const auto pts6 = sample_points(t.chart, points, seed);
  const auto ptsN = sample_points(t.N.frak_h, points, seed + 1);
  rep.checks.emplace_back("sugra6d", sweep(pts6, [&](const RVec& x) { return sugra6d_residual(t.chart, t.H, t.N.mu, x); }));
  rep.checks.emplace_back("reduced_system", sweep(ptsN, [&](const RVec& y) { return reduced_system_residual(t.N, y); }));
  const GerbeComponents gc = gerbe_components(t);
  rep.checks.emplace_back("selfdual_gerbe", sweep(ptsN, [&](const RVec& y) { return selfdual_gerbe_check(gc, y); }));
  rep.checks.emplace_back("conformal_transfer", sweep(ptsN, [&](const RVec& y) {
                            Residual r = wavefront_h_residual(to_wavefront(t.N), y).res;
                            r.parts["cross"] = conformal_cross_residual(t.N, y);
                            return r;
                          }));
}

}  // namespace

FamilyReport verify_family(const std::string& family, const Params& params, int points, std::uint64_t seed,
                           std::optional<double> tol) {
  if (!is_family(family)) throw ContractViolation("unknown family: " + family);
  if (points < 1) throw ContractViolation("points must be positive");
  const auto known = family_param_names(family);
  for (const auto& [k, v] : params)
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw ContractViolation("family " + family + " has no parameter " + k);
  FamilyReport rep;
  rep.family = family;
  rep.params = params;
  const double perturb = getp(params, "perturb_H", 0.0);

  if (family == "freedman") {
    const FreedmanSolution s = freedman_chart(freedman_params(params));
    const auto pts = sample_points(s.chart, points, seed);
    rep.checks.emplace_back("einstein_maxwell", sweep(pts, [&](const RVec& x) {
                              return einstein_maxwell_residual(s.chart, s.F, s.Lambda, s.params.e, x);
                            }));
    // g_uu changes sign with the constant c; record it instead of restricting c
    auto& causal = rep.info["einstein_maxwell"];
    causal = {{"guu_negative", 0}, {"guu_null", 0}, {"guu_positive", 0}};
    for (const RVec& x : pts) {
      const double guu = metric(s.chart, x)(0, 0);
      ++causal[std::abs(guu) <= 1e-12 ? "guu_null" : guu < 0 ? "guu_negative" : "guu_positive"];
    }
    rep.checks.emplace_back("gaugino", sweep(pts, [&](const RVec& x) { return freedman_gaugino_residual(s, x); }));
    rep.checks.emplace_back("eigenfunction", sweep(pts, [&](const RVec& x) {
                              return scalar_residual("laplace", std::abs(freedman_eigen_residual(s, x.tail(2))), 1e-6);
                            }));
    const double expected = s.params.mu * s.lambda_I * 4 * kPi * s.params.R * s.params.R;
    rep.checks.emplace_back("flux", scalar_residual("flux", std::abs(freedman_flux(s) - expected) / std::abs(expected), 1e-8));
  } else if (family == "black_brane") {
    const SixDSolution s = black_brane_chart(getp(params, "m", 1.0), getp(params, "Hbar", 0.0),
                                             getp(params, "mu", -1.0) < 0 ? -1 : 1);
    six_d_checks(rep, s, points, seed, perturb);
    const auto ptsN = sample_points(s.N.frak_h, points, seed + 1);
    rep.checks.emplace_back("duality", sweep(ptsN, [&](const RVec& y) {
                              return scalar_residual("duality", brane_duality_residual(s, y), 1e-8);
                            }));
    const auto pts6 = sample_points(s.chart, points, seed);
    rep.checks.emplace_back("quasi_susy", sweep(pts6, [&](const RVec& x) {
                              return scalar_residual("skew", quasi_susy_residual(s, x), 1e-6);
                            }));
  } else if (family == "radial") {
    RadialFamilyParams p;
    p.radial.lambda = getp(params, "lambda", p.radial.lambda);
    p.radial.e = getp(params, "e", p.radial.e);
    p.radial.c = getp(params, "c", p.radial.c);
    p.radial.m1 = getp(params, "m1", p.radial.m1);
    p.radial.m2 = getp(params, "m2", p.radial.m2);
    p.r0 = getp(params, "r0", p.r0);
    p.r1 = getp(params, "r1", p.r1);
    p.F0 = getp(params, "F0", p.F0);
    p.mu = getp(params, "mu", -1.0) < 0 ? -1 : 1;
    six_d_checks(rep, radial_family_chart(p), points, seed, perturb);
  } else {
    const auto kase = parse_killing_case(family.substr(std::string("killing_").size()));
    const KillingWarped k = killing_warped_chart(*kase, getp(params, "lambda", 0.5), getp(params, "ell", 1.0) < 0 ? -1 : 1);
    const auto pts = sample_points(k.chart, points, seed);
    rep.checks.emplace_back("hessian", sweep(pts, [&](const RVec& x) { return killing_hessian_residual(k, x); }));
    rep.checks.emplace_back("killing_system", sweep(pts, [&](const RVec& x) { return killing_system_residual(k, x); }));
  }
  if (tol)
    for (auto& [id, r] : rep.checks) r.tol = *tol;
  return rep;
}

}  // namespace spinform
