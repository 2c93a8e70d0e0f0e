#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinform/multivector.hpp"
#include "spinform/random.hpp"
#include "spinform/truncated.hpp"

namespace spinform {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SpinorRep {
  Signature sig;
  int n = 0;
  int ell = 0;  // +-1 for odd d, 0 otherwise
  std::vector<Matrix> gammas;
  Matrix chirality;  // i^{q+d/2} gamma(nu), even d only
  std::vector<Matrix> blades;  // gamma^I = gamma_{i1}...gamma_{ik}, indexed by bitmask
  std::vector<Matrix> blade_inv;

  bool odd() const { return sig.dim() % 2 == 1; }
};

SpinorRep build_rep(const Signature& sig, int ell = 0);

double clifford_residual(const SpinorRep& rep);
// Even d: max of |Gamma^2 - 1| and |{Gamma, gamma_i}|. Odd d: |gamma(nu_C) - ell|.
double volume_residual(const SpinorRep& rep);

Matrix quantize(const Multivector& a, const SpinorRep& rep);
Matrix quantize(const TruncatedMultivector& a, const SpinorRep& rep);
// Odd d returns the truncated symbol (grades <= (d-1)/2).
Multivector dequantize(const Matrix& m, const SpinorRep& rep);
TruncatedMultivector dequantize_truncated(const Matrix& m, const SpinorRep& rep);

enum class PairingKind { hermitian, bilinear };
std::string to_string(PairingKind k);

struct Pairing {
  PairingKind kind = PairingKind::hermitian;
  int s = 1;
  int sigma = 1;  // bilinear symmetry type; +1 for hermitian
  Matrix M;
};

// Empty when the requested adjoint type is not realized on this module.
std::optional<Pairing> solve_admissible(const SpinorRep& rep, int s, PairingKind kind);
double admissibility_residual(const SpinorRep& rep, const Pairing& pairing);
// H(eta1, eta2) = eta2^dagger H eta1, B(eta1, eta2) = eta2^T B eta1
cplx evaluate(const Pairing& pairing, const Vector& eta1, const Vector& eta2);

struct Spinor {
  Vector v;
  std::optional<int> mu;
};

Spinor make_chiral(const SpinorRep& rep, const Vector& v, int mu);
Spinor random_spinor(const SpinorRep& rep, Rng& rng, std::optional<int> mu = std::nullopt);

// Explicit basis expansion with literal inverses of gamma^I.
Multivector hermitian_square(const Spinor& eta, cplx kappa, const SpinorRep& rep, const Pairing& pairing);
Multivector bilinear_square(const Spinor& eta, const SpinorRep& rep, const Pairing& pairing);
// Dequantization route: kappa * eta (x) H(-, eta), resp. eta (x) B(-, eta).
Multivector hermitian_square_dequantized(const Spinor& eta, cplx kappa, const SpinorRep& rep, const Pairing& pairing);
Multivector bilinear_square_dequantized(const Spinor& eta, const SpinorRep& rep, const Pairing& pairing);

struct NotASquare : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hermitian: phase fixed arbitrarily. Bilinear: unique up to sign.
Spinor reconstruct_spinor(const Multivector& alpha, const SpinorRep& rep, const Pairing& pairing, cplx kappa = 1.0,
                          double tol = 1e-9);

}  // namespace spinform
