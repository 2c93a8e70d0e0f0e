#include "spinform/spinor.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace spinform {

namespace {

Matrix pauli(char which) {
  Matrix m = Matrix::Zero(2, 2);
  const cplx I(0, 1);
  switch (which) {
    case 'x': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'y': m(0, 1) = -I; m(1, 0) = I; break;
    case 'z': m(0, 0) = 1; m(1, 1) = -1; break;
    default: m = Matrix::Identity(2, 2);
  }
  return m;
}

Matrix kron_chain(const std::vector<char>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (char f : factors) out = Eigen::kroneckerProduct(out, pauli(f)).eval();
  return out;
}

// Jordan-Wigner strings: 2m Hermitian generators squaring to 1.
std::vector<Matrix> euclidean_generators(int m) {
  std::vector<Matrix> g;
  for (int k = 0; k < m; ++k) {
    for (char c : {'x', 'y'}) {
      std::vector<char> f(m, 'i');
      for (int j = 0; j < k; ++j) f[j] = 'z';
      f[k] = c;
      g.push_back(kron_chain(f));
    }
  }
  return g;
}

Matrix ordered_product(const std::vector<Matrix>& gammas, Blade b, int n) {
  Matrix out = Matrix::Identity(n, n);
  for (int i = 0; b; ++i, b >>= 1)
    if (b & 1) out = (out * gammas[i]).eval();
  return out;
}

}  // namespace

SpinorRep build_rep(const Signature& sig, int ell) {
  const int d = sig.dim();
  const bool odd = d % 2 == 1;
  if (odd && ell != 1 && ell != -1) throw ContractViolation("odd dimension needs ell = +1 or -1");
  if (!odd && ell != 0) throw ContractViolation("ell is only meaningful in odd dimension");

  SpinorRep rep;
  rep.sig = sig;
  rep.ell = ell;
  const int m = d / 2;
  rep.n = 1 << m;
  const cplx I(0, 1);

  rep.gammas = euclidean_generators(m);
  for (int i = 0; i < 2 * m; ++i)
    if (sig.eps(i) < 0) rep.gammas[i] *= I;

  if (odd) {
    Matrix P = Matrix::Identity(rep.n, rep.n);
    for (int i = 0; i < d - 1; ++i) P = (P * rep.gammas[i]).eval();
    // P^2 is a sign; choose c with (cP)^2 = eps_d.
    const double p2 = (P * P)(0, 0).real();
    const double c2 = sig.eps(d - 1) / p2;
    const cplx c = c2 > 0 ? cplx(1, 0) : I;
    rep.gammas.push_back(c * P);
    const Matrix X = ipow(sig.q + (d - 1) / 2) * static_cast<double>(sig.orientation) *
                     ordered_product(rep.gammas, full_blade(d), rep.n);
    if (std::abs(X(0, 0) + static_cast<double>(ell)) < 0.5) rep.gammas.back() *= -1.0;
  }

  const std::size_t nb = std::size_t{1} << d;
  rep.blades.reserve(nb);
  rep.blade_inv.reserve(nb);
  for (Blade b = 0; b < nb; ++b) {
    rep.blades.push_back(ordered_product(rep.gammas, b, rep.n));
    rep.blade_inv.push_back(rep.blades.back().inverse());
  }
  if (!odd)
    rep.chirality = ipow(sig.q + d / 2) * static_cast<double>(sig.orientation) * rep.blades[full_blade(d)];
  return rep;
}

double clifford_residual(const SpinorRep& rep) {
  const int d = rep.sig.dim();
  const Matrix id = Matrix::Identity(rep.n, rep.n);
  double r = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix ac = rep.gammas[i] * rep.gammas[j] + rep.gammas[j] * rep.gammas[i];
      if (i == j) ac -= 2.0 * rep.sig.eps(i) * id;
      r = std::max(r, ac.cwiseAbs().maxCoeff());
    }
  return r;
}

double volume_residual(const SpinorRep& rep) {
  const int d = rep.sig.dim();
  const Matrix id = Matrix::Identity(rep.n, rep.n);
  if (rep.odd()) {
    const Matrix X = ipow(rep.sig.q + (d - 1) / 2) * static_cast<double>(rep.sig.orientation) *
                     rep.blades[full_blade(d)];
    return (X - static_cast<double>(rep.ell) * id).cwiseAbs().maxCoeff();
  }
  double r = (rep.chirality * rep.chirality - id).cwiseAbs().maxCoeff();
  for (const auto& g : rep.gammas) r = std::max(r, (rep.chirality * g + g * rep.chirality).cwiseAbs().maxCoeff());
  return r;
}

static void require_rep(const Signature& sig, const SpinorRep& rep) {
  if (!sig.same_algebra(rep.sig) || sig.orientation != rep.sig.orientation)
    throw ContractViolation("signature does not match representation");
}

Matrix quantize(const Multivector& a, const SpinorRep& rep) {
  require_rep(a.sig(), rep);
  Matrix out = Matrix::Zero(rep.n, rep.n);
  for (Blade b = 0; b < a.size(); ++b)
    if (a[b] != cplx{}) out += a[b] * rep.blades[b];
  return out;
}

Matrix quantize(const TruncatedMultivector& a, const SpinorRep& rep) {
  if (a.ell() != rep.ell) throw ContractViolation("branch does not match representation");
  return quantize(a.mv(), rep);
}

Multivector dequantize(const Matrix& m, const SpinorRep& rep) {
  if (m.rows() != rep.n || m.cols() != rep.n) throw ContractViolation("dequantize: matrix size mismatch");
  Multivector out(rep.sig);
  const int kmax = rep.odd() ? (rep.sig.dim() - 1) / 2 : rep.sig.dim();
  for (Blade b = 0; b < out.size(); ++b) {
    if (popcount(b) > kmax) continue;
    out[b] = (rep.blade_inv[b] * m).trace() / static_cast<double>(rep.n);
  }
  return out;
}

TruncatedMultivector dequantize_truncated(const Matrix& m, const SpinorRep& rep) {
  if (!rep.odd()) throw ContractViolation("dequantize_truncated: even dimension");
  return TruncatedMultivector(dequantize(m, rep), rep.ell);
}

std::string to_string(PairingKind k) { return k == PairingKind::hermitian ? "hermitian" : "bilinear"; }

std::optional<Pairing> solve_admissible(const SpinorRep& rep, int s, PairingKind kind) {
  if (s != 1 && s != -1) throw ContractViolation("adjoint type must be +1 or -1");
  const int n = rep.n;
  const int nn = n * n;
  const Matrix id = Matrix::Identity(n, n);
  // Column-major vec: vec(X G) = (G^T (x) 1) vec X, vec(G X) = (1 (x) G) vec X.
  Matrix normal = Matrix::Zero(nn, nn);
  for (const auto& g : rep.gammas) {
    const Matrix other = kind == PairingKind::hermitian ? Matrix(g.adjoint()) : Matrix(g.transpose());
    const Matrix A = Eigen::kroneckerProduct(Matrix(g.transpose()), id).eval() -
                     static_cast<double>(s) * Eigen::kroneckerProduct(id, other).eval();
    normal += A.adjoint() * A;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(normal);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.maxCoeff());
  int null_dim = 0;
  while (null_dim < nn && ev(null_dim) < 1e-9 * scale) ++null_dim;
  if (null_dim == 0) return std::nullopt;
  if (null_dim > 1) throw std::runtime_error("admissible pairing space is not one-dimensional (reducible module?)");

  Matrix P = Eigen::Map<const Matrix>(es.eigenvectors().col(0).data(), n, n);
  Pairing out;
  out.kind = kind;
  out.s = s;

  // First entry of maximal modulus, row-major scan.
  auto pivot = [&](const Matrix& M) {
    int bi = 0, bj = 0;
    double best = -1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(M(i, j)) > best * (1 + 1e-9)) { best = std::abs(M(i, j)); bi = i; bj = j; }
    return std::pair{bi, bj};
  };

  if (kind == PairingKind::hermitian) {
    Matrix H = P + P.adjoint();
    if (H.cwiseAbs().maxCoeff() < 1e-8) H = cplx(0, 1) * (P - P.adjoint());
    auto [i, j] = pivot(H);
    const cplx e = H(i, j);
    double sign = std::abs(e.real()) > 1e-9 * std::abs(e) ? (e.real() > 0 ? 1.0 : -1.0) : (e.imag() > 0 ? 1.0 : -1.0);
    H *= sign / std::abs(e);
    out.M = H;
    out.sigma = 1;
  } else {
    auto [i, j] = pivot(P);
    Matrix B = P / P(i, j);
    out.M = B;
    out.sigma = (B.transpose() - B).cwiseAbs().maxCoeff() < 1e-8 ? 1 : -1;
    if (out.sigma == -1 && (B.transpose() + B).cwiseAbs().maxCoeff() > 1e-8)
      throw std::runtime_error("bilinear pairing is neither symmetric nor skew");
  }
  return out;
}

double admissibility_residual(const SpinorRep& rep, const Pairing& pairing) {
  double r = 0;
  const double s = pairing.s;
  for (const auto& g : rep.gammas) {
    Matrix res = pairing.kind == PairingKind::hermitian ? Matrix(pairing.M * g - s * g.adjoint() * pairing.M)
                                                         : Matrix(pairing.M * g - s * g.transpose() * pairing.M);
    r = std::max(r, res.cwiseAbs().maxCoeff());
  }
  if (pairing.kind == PairingKind::hermitian)
    r = std::max(r, (pairing.M - pairing.M.adjoint()).cwiseAbs().maxCoeff());
  else
    r = std::max(r, (pairing.M.transpose() - pairing.sigma * pairing.M).cwiseAbs().maxCoeff());
  return r;
}

cplx evaluate(const Pairing& pairing, const Vector& eta1, const Vector& eta2) {
  if (pairing.kind == PairingKind::hermitian) return eta2.dot(pairing.M * eta1);
  return (eta2.transpose() * pairing.M * eta1)(0, 0);
}

Spinor make_chiral(const SpinorRep& rep, const Vector& v, int mu) {
  if (rep.odd()) throw ContractViolation("chirality needs even dimension");
  if (mu != 1 && mu != -1) throw ContractViolation("chirality must be +1 or -1");
  Vector w = 0.5 * (v + static_cast<double>(mu) * (rep.chirality * v));
  return {w, mu};
}

Spinor random_spinor(const SpinorRep& rep, Rng& rng, std::optional<int> mu) {
  Vector v = random_vector(rep.n, rng);
  if (mu) return make_chiral(rep, v, *mu);
  return {v, std::nullopt};
}

static void require_kind(const Pairing& p, PairingKind k) {
  if (p.kind != k) throw ContractViolation("pairing kind mismatch: expected " + to_string(k));
}

static Multivector expand_square(const Spinor& eta, cplx factor, const SpinorRep& rep, const Pairing& pairing) {
  if (eta.v.size() != rep.n) throw ContractViolation("spinor size does not match representation");
  Multivector out(rep.sig);
  const int kmax = rep.odd() ? (rep.sig.dim() - 1) / 2 : rep.sig.dim();
  for (Blade b = 0; b < out.size(); ++b) {
    if (popcount(b) > kmax) continue;
    out[b] = factor * evaluate(pairing, rep.blade_inv[b] * eta.v, eta.v) / static_cast<double>(rep.n);
  }
  return out;
}

Multivector hermitian_square(const Spinor& eta, cplx kappa, const SpinorRep& rep, const Pairing& pairing) {
  require_kind(pairing, PairingKind::hermitian);
  return expand_square(eta, kappa, rep, pairing);
}

Multivector bilinear_square(const Spinor& eta, const SpinorRep& rep, const Pairing& pairing) {
  require_kind(pairing, PairingKind::bilinear);
  return expand_square(eta, 1.0, rep, pairing);
}

Multivector hermitian_square_dequantized(const Spinor& eta, cplx kappa, const SpinorRep& rep, const Pairing& pairing) {
  require_kind(pairing, PairingKind::hermitian);
  const Matrix E = kappa * eta.v * (eta.v.adjoint() * pairing.M);
  return dequantize(E, rep);
}

Multivector bilinear_square_dequantized(const Spinor& eta, const SpinorRep& rep, const Pairing& pairing) {
  require_kind(pairing, PairingKind::bilinear);
  const Matrix E = eta.v * (eta.v.transpose() * pairing.M);
  return dequantize(E, rep);
}

Spinor reconstruct_spinor(const Multivector& alpha, const SpinorRep& rep, const Pairing& pairing, cplx kappa,
                          double tol) {
  const double anorm = alpha.norm();
  if (anorm == 0.0) throw NotASquare("vanishing form is not the square of a nowhere-vanishing spinor");
  if (rep.odd() && alpha.max_grade() > (rep.sig.dim() - 1) / 2)
    throw ContractViolation("odd-dimensional squares live in the truncated algebra");
  Matrix R = quantize(alpha, rep) * pairing.M.inverse();
  if (pairing.kind == PairingKind::hermitian) R /= kappa;
  int j = 0;
  R.diagonal().cwiseAbs().maxCoeff(&j);
  const cplx pivot = R(j, j);
  Spinor eta;
  if (pairing.kind == PairingKind::hermitian) {
    if (pivot.real() <= 0) throw NotASquare("quantized form is not of the shape eta eta^dagger");
    eta.v = R.col(j) / std::sqrt(pivot.real());
  } else {
    eta.v = R.col(j) / std::sqrt(pivot);
  }
  const Multivector back = pairing.kind == PairingKind::hermitian ? hermitian_square(eta, kappa, rep, pairing)
                                                                   : bilinear_square(eta, rep, pairing);
  if ((back - alpha).norm() > tol * anorm) throw NotASquare("rank-one extraction does not reproduce the form");
  if (!rep.odd()) {
    const Vector cv = rep.chirality * eta.v;
    if ((cv - eta.v).norm() <= 1e-10 * eta.v.norm()) eta.mu = 1;
    else if ((cv + eta.v).norm() <= 1e-10 * eta.v.norm()) eta.mu = -1;
  }
  return eta;
}

}  // namespace spinform
