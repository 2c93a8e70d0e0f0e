#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinform/multivector.hpp"
#include "spinform/random.hpp"
#include "spinform/spinor.hpp"

namespace spinform {

// Even d (ell = 0): geometric product. Odd d: the truncated product on branch ell.
Multivector algebra_product(const Multivector& a, const Multivector& b, int ell);
// Inverse of the Hodge star, grade by grade.
Multivector inverse_hodge(const Multivector& a);

struct AxiomOptions {
  PairingKind kind = PairingKind::hermitian;
  int s = 1;
  cplx kappa = 1.0;
  int sigma = 1;
  std::optional<int> mu;
  int ell = 0;
  std::optional<Multivector> beta;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int attempts = 64;
};

struct AxiomReport {
  double idempotency = 0;
  double fierz = 0;
  double reality = 0;  // reality (hermitian) or symmetry (bilinear)
  double chirality = 0;
  std::optional<Multivector> witness;
  double tol = 1e-10;
  bool pass = false;
  std::string verdict;  // "pass", "fail", "vanishing", "degenerate candidate"
  double max_residual() const;
};

AxiomReport check_square_axioms(const Multivector& alpha, const AxiomOptions& opt);

struct ConstraintCheck {
  bool annihilates = false;
  double residual = 0;
  std::optional<bool> matrix_annihilates;
  double matrix_residual = 0;
  bool consistent = true;  // algebraic and matrix statements agree
};

// q (x) alpha = 0 (truncated product for odd d); cross-checked against quantize(q) eta when eta is given.
ConstraintCheck check_constrained(const Multivector& q, const Multivector& alpha, int ell, double tol = 1e-9,
                                  const SpinorRep* rep = nullptr, const Vector* eta = nullptr);

struct NormalForm {
  std::string shape;
  std::map<std::string, Multivector> forms;
  std::map<std::string, cplx> scalars;
  std::map<std::string, double> residuals;
  std::vector<std::string> violated;
  double tol = 1e-9;
  bool pass = false;
};

// Supported: hermitian (2,0) (3,0) (4,0) (3,1) (5,1); bilinear (3,1) (5,1). mu required in (3,1) and (5,1).
NormalForm normal_form(const Multivector& alpha, PairingKind kind, std::optional<int> mu = std::nullopt,
                       double tol = 1e-9);

// Isotropic v with <u, v> = 1 for an isotropic real u.
Multivector conjugate_one_form(const Multivector& u);

struct CompatibilityReport {
  std::map<std::string, double> residuals;
  Multivector v;
  Multivector Omega;
  double tol = 1e-9;
  bool pass = false;
  // The relations only see alpha up to a unit phase, so the phase of eta is not recovered.
  bool phase_blind = true;
};

CompatibilityReport hermitian_bilinear_compatibility(const Multivector& alpha_hat, const Multivector& alpha, int mu,
                                                     std::optional<Multivector> v = std::nullopt, double tol = 1e-9);

// (iota_S alpha) ^ alpha = 0 for all (k-1)-subsets S.
double decomposability_residual(const Multivector& alpha, int k);
// Max |<iota_S alpha, iota_T alpha>| over (k-1)-subsets: factors span a totally isotropic space.
double isotropy_residual(const Multivector& alpha, int k);

}  // namespace spinform
