#include "spinform/random.hpp"

#include <numbers>

namespace spinform {

cplx random_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double re = n(rng);
  double im = n(rng);
  return {re, im};
}

double random_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

cplx random_phase(Rng& rng) { return std::polar(1.0, random_real(rng, 0.0, 2.0 * std::numbers::pi)); }

Multivector random_multivector(const Signature& sig, Rng& rng, bool real_only) {
  Multivector m(sig);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& z : m.coeffs()) z = real_only ? cplx(n(rng), 0.0) : random_complex(rng);
  return m;
}

Multivector random_homogeneous(const Signature& sig, int k, Rng& rng, bool real_only) {
  return random_multivector(sig, rng, real_only).grade(k);
}

TruncatedMultivector random_truncated(const Signature& sig, int ell, Rng& rng) {
  return truncate(random_multivector(sig, rng), ell);
}

Eigen::VectorXcd random_vector(int n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = random_complex(rng);
  return v;
}

}  // namespace spinform
