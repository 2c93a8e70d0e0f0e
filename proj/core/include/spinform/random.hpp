#pragma once

#include <random>

#include <Eigen/Dense>

#include "spinform/multivector.hpp"
#include "spinform/truncated.hpp"

namespace spinform {

using Rng = std::mt19937_64;

cplx random_complex(Rng& rng);
double random_real(Rng& rng, double lo, double hi);
cplx random_phase(Rng& rng);

// Gaussian coefficients; real_only drops imaginary parts.
Multivector random_multivector(const Signature& sig, Rng& rng, bool real_only = false);
Multivector random_homogeneous(const Signature& sig, int k, Rng& rng, bool real_only = false);
TruncatedMultivector random_truncated(const Signature& sig, int ell, Rng& rng);
Eigen::VectorXcd random_vector(int n, Rng& rng);

}  // namespace spinform
