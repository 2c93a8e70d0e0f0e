#include "spinform/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace spinform {

Multivector algebra_product(const Multivector& a, const Multivector& b, int ell) {
  if (a.dim() % 2 == 0) return geometric_product(a, b);
  return vee_product(TruncatedMultivector(a, ell), TruncatedMultivector(b, ell)).mv();
}

Multivector inverse_hodge(const Multivector& a) {
  const int d = a.dim();
  const int q = a.sig().q;
  Multivector out(a.sig());
  for (int j = 0; j <= d; ++j) {
    const Multivector part = a.grade(j);
    if (part.is_zero()) continue;
    const int k = d - j;
    const double sign = ((k * (d - k) + q) & 1) ? -1.0 : 1.0;
    out += sign * hodge_star(part);
  }
  return out;
}

double AxiomReport::max_residual() const { return std::max({idempotency, fierz, reality, chirality}); }

AxiomReport check_square_axioms(const Multivector& alpha, const AxiomOptions& opt) {
  AxiomReport rep;
  rep.tol = opt.tol;
  const Signature& sig = alpha.sig();
  const int d = sig.dim();
  const bool odd = d % 2 == 1;
  if (odd && opt.ell == 0) throw ContractViolation("odd dimension needs a branch ell");
  if (odd && opt.mu) throw ContractViolation("chirality only exists in even dimension");
  const double n = std::ldexp(1.0, d / 2);
  const double an = alpha.norm();
  if (an == 0.0) {
    rep.verdict = "vanishing";
    return rep;
  }

  auto prod = [&](const Multivector& a, const Multivector& b) { return algebra_product(a, b, opt.ell); };

  const Multivector aa = prod(alpha, alpha);
  rep.idempotency = (aa - n * alpha.scalar_part() * alpha).norm() / (n * an * an);

  if (opt.kind == PairingKind::hermitian) {
    const Multivector lhs = adjoint_twist(std::conj(opt.kappa) * alpha, opt.s);
    rep.reality = (lhs - opt.kappa * alpha.conj()).norm() / an;
  } else {
    rep.reality = (adjoint_twist(alpha, opt.s) - static_cast<double>(opt.sigma) * alpha).norm() / an;
  }

  if (opt.mu) {
    const Multivector lhs = ipow(sig.q + d / 2) * hodge_star(involution(alpha, Involution::both));
    rep.chirality = (lhs - static_cast<double>(*opt.mu) * alpha).norm() / an;
  }

  Multivector beta(sig);
  bool found = false;
  if (opt.beta) {
    beta = *opt.beta;
    found = std::abs(prod(alpha, beta).scalar_part()) > 1e-12 * an * beta.norm();
  } else {
    Rng rng(opt.seed);
    for (int attempt = 0; attempt < opt.attempts && !found; ++attempt) {
      beta = random_multivector(sig, rng);
      if (odd) beta = project_lower(beta);
      beta *= 1.0 / beta.norm();
      found = std::abs(prod(alpha, beta).scalar_part()) > 1e-8 * an;
    }
  }
  if (!found) {
    rep.verdict = "degenerate candidate";
    return rep;
  }
  rep.witness = beta;
  const Multivector ab = prod(alpha, beta);
  const Multivector aba = prod(ab, alpha);
  rep.fierz = (aba - n * ab.scalar_part() * alpha).norm() / (n * an * an * beta.norm());

  rep.pass = rep.max_residual() <= opt.tol;
  rep.verdict = rep.pass ? "pass" : "fail";
  return rep;
}

ConstraintCheck check_constrained(const Multivector& q, const Multivector& alpha, int ell, double tol,
                                  const SpinorRep* rep, const Vector* eta) {
  ConstraintCheck c;
  const double scale = std::max(q.norm() * alpha.norm(), 1e-300);
  c.residual = algebra_product(q, alpha, ell).norm() / scale;
  c.annihilates = c.residual <= tol;
  if (rep && eta) {
    const Matrix Q = alpha.dim() % 2 == 1 ? quantize(project_lower(q), *rep) : quantize(q, *rep);
    const double s2 = std::max(Q.norm() * eta->norm(), 1e-300);
    c.matrix_residual = (Q * *eta).norm() / s2;
    c.matrix_annihilates = c.matrix_residual <= tol;
    c.consistent = *c.matrix_annihilates == c.annihilates;
  }
  return c;
}

namespace {

struct Checker {
  NormalForm& nf;
  void add(const std::string& name, double value) {
    nf.residuals[name] = value;
    if (!(value <= nf.tol)) nf.violated.push_back(name);
  }
};

double rel(double x, double scale) { return x / std::max(scale, 1e-300); }

Blade bit(int i) { return Blade{1} << i; }

void subsets_of_size(int d, int k, std::vector<Blade>& out) {
  for (Blade b = 0; b < (Blade{1} << d); ++b)
    if (popcount(b) == k) out.push_back(b);
}

Multivector interior_set(Blade s, const Multivector& a) {
  Multivector out = a;
  for (int i = 0; s; ++i, s >>= 1)
    if (s & 1) out = interior(i, out);
  return out;
}

cplx top_coefficient(const Multivector& a) {
  // a = c * nu
  const Blade full = full_blade(a.dim());
  return a[full] * static_cast<double>(a.sig().orientation);
}

void normal_form_20(const Multivector& a, NormalForm& nf, std::optional<int> mu) {
  Checker ck{nf};
  const double s = a.norm();
  const cplx r = a.scalar_part();
  const Multivector theta = a.grade(1);
  const cplx f = top_coefficient(a.grade(2)) / cplx(0, 1);
  nf.shape = "r + theta + i f nu";
  nf.scalars = {{"r", r}, {"f", f}};
  nf.forms = {{"theta", theta.real()}};
  ck.add("r real", rel(std::abs(r.imag()), s));
  ck.add("theta real", rel(theta.imag().norm(), s));
  ck.add("f real", rel(std::abs(f.imag()), s));
  ck.add("r^2 = f^2 + <theta,theta>", rel(std::abs(r * r - f * f - metric_pairing(theta, theta)), s * s));
  if (mu) {
    ck.add("chiral: theta = 0", rel(theta.norm(), s));
    ck.add("chiral: f = mu r", rel(std::abs(f - static_cast<double>(*mu) * r), s));
  }
}

void normal_form_30(const Multivector& a, NormalForm& nf) {
  Checker ck{nf};
  const double s = a.norm();
  const cplx r = a.scalar_part();
  const Multivector theta = a.grade(1);
  nf.shape = "r + theta";
  nf.scalars = {{"r", r}};
  nf.forms = {{"theta", theta.real()}};
  ck.add("truncated", rel((a - a.grades_upto(1)).norm(), s));
  ck.add("r real", rel(std::abs(r.imag()), s));
  ck.add("theta real", rel(theta.imag().norm(), s));
  ck.add("r^2 = <theta,theta>", rel(std::abs(r * r - metric_pairing(theta, theta)), s * s));
}

void normal_form_40(const Multivector& a, NormalForm& nf, std::optional<int> mu) {
  Checker ck{nf};
  const double s = a.norm();
  const cplx I(0, 1);
  const Multivector nu = volume_form(a.sig());
  const cplx r = a.scalar_part();
  const Multivector theta = a.grade(1);
  const Multivector omega = a.grade(2) * (-I);
  const Multivector vartheta = inverse_hodge(a.grade(3) * (-I));
  const cplx f = top_coefficient(a.grade(4));
  nf.shape = "r + theta + i omega + i *vartheta + f nu";
  nf.scalars = {{"r", r}, {"f", f}};
  nf.forms = {{"theta", theta.real()}, {"omega", omega.real()}, {"vartheta", vartheta.real()}};
  ck.add("r real", rel(std::abs(r.imag()), s));
  ck.add("f real", rel(std::abs(f.imag()), s));
  ck.add("theta real", rel(theta.imag().norm(), s));
  ck.add("omega real", rel(omega.imag().norm(), s));
  ck.add("vartheta real", rel(vartheta.imag().norm(), s));

  const double s2 = s * s;
  ck.add("<theta,theta>+<omega,omega>+<vartheta,vartheta>+f^2 = 3r^2",
         rel(std::abs(metric_pairing(theta, theta) + metric_pairing(omega, omega) + metric_pairing(vartheta, vartheta) +
                      f * f - 3.0 * r * r),
             s2));
  ck.add("*(omega^vartheta) = r theta", rel((hodge_star(wedge(omega, vartheta)) - r * theta).norm(), s2));
  ck.add("*(theta^vartheta) + f *omega = -r omega",
         rel((hodge_star(wedge(theta, vartheta)) + f * hodge_star(omega) + r * omega).norm(), s2));
  ck.add("theta^omega = r *vartheta", rel((wedge(theta, omega) - r * hodge_star(vartheta)).norm(), s2));
  ck.add("omega^omega = -2 r f nu", rel((wedge(omega, omega) + 2.0 * r * f * nu).norm(), s2));
  ck.add("<vartheta,theta> = 0", rel(std::abs(metric_pairing(vartheta, theta)), s2));
  ck.add("<vartheta,vartheta> = r^2 - f^2", rel(std::abs(metric_pairing(vartheta, vartheta) - r * r + f * f), s2));
  ck.add("<theta,theta> = r^2 - f^2", rel(std::abs(metric_pairing(theta, theta) - r * r + f * f), s2));
  ck.add("<omega,omega> = r^2 + f^2", rel(std::abs(metric_pairing(omega, omega) - r * r - f * f), s2));
  if (mu) {
    const double m = *mu;
    ck.add("chiral: theta = vartheta = 0", rel(theta.norm() + vartheta.norm(), s));
    ck.add("chiral: f = -mu r", rel(std::abs(f + m * r), s));
    ck.add("chiral: *omega = mu omega", rel((hodge_star(omega) - m * omega).norm(), s));
    ck.add("chiral: <omega,omega> = 2r^2", rel(std::abs(metric_pairing(omega, omega) - 2.0 * r * r), s2));
  }
}

void normal_form_31_hermitian(const Multivector& a, NormalForm& nf, int mu) {
  Checker ck{nf};
  const double s = a.norm();
  const Multivector u = a.grade(1);
  nf.shape = "u + i mu *u";
  nf.forms = {{"u", u.real()}};
  ck.add("u real", rel(u.imag().norm(), s));
  ck.add("<u,u> = 0", rel(std::abs(metric_pairing(u, u)), s * s));
  ck.add("alpha = u + i mu *u", rel((a - u - cplx(0, mu) * hodge_star(u)).norm(), s));
}

void normal_form_bilinear(const Multivector& a, NormalForm& nf, int mu, int k, cplx duality) {
  Checker ck{nf};
  const double s = a.norm();
  const Multivector form = a.grade(k);
  nf.shape = k == 2 ? "theta1 ^ theta2" : "theta1 ^ theta2 ^ theta3";
  nf.forms = {{"alpha", form}};
  ck.add("pure degree", rel((a - form).norm(), s));
  ck.add("self-duality", rel((duality * hodge_star(form) - static_cast<double>(mu) * form).norm(), s));
  ck.add("decomposable", rel(decomposability_residual(form, k), s * s));
  ck.add("isotropic factors", rel(isotropy_residual(form, k), s * s));
  if (k == 2) ck.add("alpha (x) alpha = 0", rel(geometric_product(form, form).norm(), s * s));
}

void normal_form_51_hermitian(const Multivector& a, NormalForm& nf, int mu) {
  Checker ck{nf};
  const double s = a.norm();
  const double m = mu;
  const cplx I(0, 1);
  const Multivector u = a.grade(1);
  nf.shape = "u + i u^omega - mu *u";
  ck.add("u real", rel(u.imag().norm(), s));
  ck.add("<u,u> = 0", rel(std::abs(metric_pairing(u, u)), s * s));
  ck.add("grade 5 = -mu *u", rel((a.grade(5) + m * hodge_star(u)).norm(), s));
  ck.add("no even part", rel((a.grade(0) + a.grade(2) + a.grade(4) + a.grade(6)).norm(), s));
  const Multivector uw = a.grade(3) * (-I);
  ck.add("u^omega real", rel(uw.imag().norm(), s));
  if (u.norm() < 1e-12 * s) {
    nf.violated.push_back("u vanishes");
    return;
  }
  const Multivector v = conjugate_one_form(u.real());
  const Multivector omega = interior(v, uw.real());
  nf.forms = {{"u", u.real()}, {"v", v}, {"omega_uv", omega}};
  const double su = u.norm();
  ck.add("u^omega_uv reproduces grade 3", rel((wedge(u, omega) - uw).norm(), su));
  ck.add("*(u^omega) = mu u^omega", rel((hodge_star(uw) - m * uw).norm(), su));
  ck.add("omega(u#) = 0", rel(interior(u, omega).norm(), su));
  ck.add("<omega,omega> = 2", std::abs(metric_pairing(omega, omega) - 2.0));
  const Multivector ww = wedge(omega, omega);
  ck.add("2 mu *u = u^omega^omega", rel((2.0 * m * hodge_star(u) - wedge(u, ww)).norm(), su));
  // Gauge-fixed Hodge identities.
  ck.add("*u = (mu/2) u^w^w", rel((hodge_star(u) - 0.5 * m * wedge(u, ww)).norm(), su));
  ck.add("*v = -(mu/2) v^w^w", rel((hodge_star(v) + 0.5 * m * wedge(v, ww)).norm(), v.norm()));
  ck.add("*(u^v) = (mu/2) w^w", (hodge_star(wedge(u, v)) - 0.5 * m * ww).norm() / (su * v.norm()));
  ck.add("*w = -mu u^v^w", rel((hodge_star(omega) + m * wedge(wedge(u, v), omega)).norm(), su * v.norm()));
  ck.add("*(u^w) = mu u^w", rel((hodge_star(wedge(u, omega)) - m * wedge(u, omega)).norm(), su));
  ck.add("*(v^w) = -mu v^w", rel((hodge_star(wedge(v, omega)) + m * wedge(v, omega)).norm(), v.norm()));
}

}  // namespace

NormalForm normal_form(const Multivector& alpha, PairingKind kind, std::optional<int> mu, double tol) {
  NormalForm nf;
  nf.tol = tol;
  const Signature& sig = alpha.sig();
  const bool herm = kind == PairingKind::hermitian;
  auto need_mu = [&] {
    if (!mu) throw ContractViolation("normal form in " + sig.str() + " needs the chirality mu");
    return *mu;
  };
  if (alpha.norm() == 0.0) {
    nf.violated.push_back("vanishing form");
    return nf;
  }
  if (herm && sig.p == 2 && sig.q == 0) normal_form_20(alpha, nf, mu);
  else if (herm && sig.p == 3 && sig.q == 0) normal_form_30(alpha, nf);
  else if (herm && sig.p == 4 && sig.q == 0) normal_form_40(alpha, nf, mu);
  else if (herm && sig.p == 3 && sig.q == 1) normal_form_31_hermitian(alpha, nf, need_mu());
  else if (herm && sig.p == 5 && sig.q == 1) normal_form_51_hermitian(alpha, nf, need_mu());
  else if (!herm && sig.p == 3 && sig.q == 1) normal_form_bilinear(alpha, nf, need_mu(), 2, cplx(0, 1));
  else if (!herm && sig.p == 5 && sig.q == 1) normal_form_bilinear(alpha, nf, need_mu(), 3, 1.0);
  else throw ContractViolation("no normal form for " + to_string(kind) + " squares in " + sig.str());
  nf.pass = nf.violated.empty();
  return nf;
}

Multivector conjugate_one_form(const Multivector& u) {
  const Signature& sig = u.sig();
  if (!u.is_homogeneous(1)) throw ContractViolation("conjugate_one_form: u must be a one-form");
  // Pick the basis covector with the largest pairing against u.
  int best = 0;
  double bv = -1;
  for (int i = 0; i < sig.dim(); ++i)
    if (std::abs(u[bit(i)]) > bv) { bv = std::abs(u[bit(i)]); best = i; }
  const Multivector w = Multivector::basis(sig, bit(best));
  const cplx uw = metric_pairing(u, w);
  if (std::abs(uw) == 0.0) throw ContractViolation("conjugate_one_form: u vanishes");
  const cplx ww = metric_pairing(w, w);
  return (w - (ww / (2.0 * uw)) * u) * (1.0 / uw);
}

CompatibilityReport hermitian_bilinear_compatibility(const Multivector& alpha_hat, const Multivector& alpha, int mu,
                                                     std::optional<Multivector> v, double tol) {
  require_same_algebra(alpha_hat, alpha);
  if (!(alpha.sig().p == 5 && alpha.sig().q == 1)) throw ContractViolation("compatibility check is for (5,1)");
  CompatibilityReport rep;
  rep.tol = tol;
  const double m = mu;
  const cplx I(0, 1);
  const Multivector u = alpha_hat.grade(1).real();
  const double su = std::max(u.norm(), 1e-300);
  rep.v = v ? *v : conjugate_one_form(u);
  rep.residuals["<u,v> = 1"] = std::abs(metric_pairing(u, rep.v) - 1.0);
  rep.residuals["<v,v> = 0"] = std::abs(metric_pairing(rep.v, rep.v));
  const Multivector omega = interior(rep.v, alpha_hat.grade(3) * (-I)).real();
  const Multivector Om = interior(rep.v, alpha);
  const Multivector ab = alpha.conj();
  rep.Omega = Om;
  rep.residuals["u = (mu/4) *(alpha(v#) ^ conj alpha)"] = (u - (0.25 * m) * hodge_star(wedge(Om, ab))).norm() / su;
  rep.residuals["omega = -(i/4) alpha(v#) D1 conj alpha(v#)"] =
      (omega + (0.25 * I) * generalized_product(Om, interior(rep.v, ab), 1)).norm();
  rep.residuals["alpha = u ^ Omega"] = (alpha - wedge(u, Om)).norm() / std::max(alpha.norm(), 1e-300);
  rep.residuals["Omega ^ conj Omega = 2 omega ^ omega"] = (wedge(Om, Om.conj()) - 2.0 * wedge(omega, omega)).norm();
  rep.pass = true;
  for (const auto& [k, r] : rep.residuals)
    if (!(r <= tol)) rep.pass = false;
  return rep;
}

double decomposability_residual(const Multivector& alpha, int k) {
  std::vector<Blade> subsets;
  subsets_of_size(alpha.dim(), k - 1, subsets);
  double r = 0;
  for (Blade s : subsets) r = std::max(r, wedge(interior_set(s, alpha), alpha).norm());
  return r;
}

double isotropy_residual(const Multivector& alpha, int k) {
  std::vector<Blade> subsets;
  subsets_of_size(alpha.dim(), k - 1, subsets);
  std::vector<Multivector> factors;
  for (Blade s : subsets) factors.push_back(interior_set(s, alpha));
  double r = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i; j < factors.size(); ++j) r = std::max(r, std::abs(metric_pairing(factors[i], factors[j])));
  return r;
}

}  // namespace spinform
