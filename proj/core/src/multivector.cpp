#include "spinform/multivector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace spinform {

Signature::Signature(int p_, int q_, int orientation_) : p(p_), q(q_), orientation(orientation_) {
  if (p < 0 || q < 0 || p + q < 1 || p + q > kMaxDim)
    throw ContractViolation("signature (" + std::to_string(p) + "," + std::to_string(q) + ") out of range");
  if (orientation != 1 && orientation != -1) throw ContractViolation("orientation must be +1 or -1");
}

double Signature::eps(Blade b) const { return (popcount(b & negative_mask()) & 1) ? -1.0 : 1.0; }

std::string Signature::str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

int popcount(Blade b) { return std::popcount(b); }

double reorder_sign(Blade a, Blade b) {
  int swaps = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1.0 : 1.0;
}

Multivector::Multivector(const Signature& sig) : sig_(sig), c_(std::size_t{1} << sig.dim()) {}

Multivector::Multivector(const Signature& sig, std::vector<cplx> coeffs) : sig_(sig), c_(std::move(coeffs)) {
  if (c_.size() != (std::size_t{1} << sig.dim())) throw ContractViolation("coefficient count does not match 2^d");
}

Multivector Multivector::scalar(const Signature& sig, cplx c) {
  Multivector m(sig);
  m[0] = c;
  return m;
}

Multivector Multivector::basis(const Signature& sig, Blade b, cplx c) {
  Multivector m(sig);
  m[b] = c;
  return m;
}

Multivector Multivector::one_form(const Signature& sig, std::span<const cplx> comps) {
  if (static_cast<int>(comps.size()) != sig.dim()) throw ContractViolation("one_form: wrong component count");
  Multivector m(sig);
  for (int i = 0; i < sig.dim(); ++i) m[Blade{1} << i] = comps[i];
  return m;
}

Multivector Multivector::one_form(const Signature& sig, std::span<const double> comps) {
  std::vector<cplx> c(comps.begin(), comps.end());
  return one_form(sig, std::span<const cplx>(c));
}

Multivector Multivector::grade(int k) const {
  Multivector m(sig_);
  for (Blade b = 0; b < c_.size(); ++b)
    if (popcount(b) == k) m.c_[b] = c_[b];
  return m;
}

Multivector Multivector::grades_upto(int k) const {
  Multivector m(sig_);
  for (Blade b = 0; b < c_.size(); ++b)
    if (popcount(b) <= k) m.c_[b] = c_[b];
  return m;
}

int Multivector::max_grade() const {
  int g = -1;
  for (Blade b = 0; b < c_.size(); ++b)
    if (c_[b] != cplx{}) g = std::max(g, popcount(b));
  return g;
}

bool Multivector::is_homogeneous(int k, double tol) const {
  for (Blade b = 0; b < c_.size(); ++b)
    if (popcount(b) != k && std::abs(c_[b]) > tol) return false;
  return true;
}

Multivector Multivector::conj() const {
  Multivector m(*this);
  for (auto& z : m.c_) z = std::conj(z);
  return m;
}

Multivector Multivector::real() const {
  Multivector m(*this);
  for (auto& z : m.c_) z = z.real();
  return m;
}

Multivector Multivector::imag() const {
  Multivector m(*this);
  for (auto& z : m.c_) z = z.imag();
  return m;
}

double Multivector::norm() const {
  double s = 0;
  for (const auto& z : c_) s += std::norm(z);
  return std::sqrt(s);
}

double Multivector::norm_inf() const {
  double s = 0;
  for (const auto& z : c_) s = std::max(s, std::abs(z));
  return s;
}

void require_same_algebra(const Multivector& a, const Multivector& b) {
  if (!(a.sig() == b.sig()))
    throw ContractViolation("signature mismatch: " + a.sig().str() + " vs " + b.sig().str());
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_same_algebra(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_same_algebra(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(cplx s) {
  for (auto& z : c_) z *= s;
  return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(Multivector a, cplx s) { return a *= s; }
Multivector operator*(cplx s, Multivector a) { return a *= s; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  const Signature& sig = a.sig();
  const Blade neg = sig.negative_mask();
  Multivector out(sig);
  const std::size_t n = a.size();
  for (Blade x = 0; x < n; ++x) {
    const cplx ax = a[x];
    if (ax == cplx{}) continue;
    for (Blade y = 0; y < n; ++y) {
      const cplx by = b[y];
      if (by == cplx{}) continue;
      double s = reorder_sign(x, y);
      if (popcount(x & y & neg) & 1) s = -s;
      out[x ^ y] += s * ax * by;
    }
  }
  return out;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  Multivector out(a.sig());
  const std::size_t n = a.size();
  for (Blade x = 0; x < n; ++x) {
    if (a[x] == cplx{}) continue;
    for (Blade y = 0; y < n; ++y) {
      if ((x & y) || b[y] == cplx{}) continue;
      out[x | y] += reorder_sign(x, y) * a[x] * b[y];
    }
  }
  return out;
}

namespace {

// iota_{e_i} e_I = (-1)^{#{j in I : j < i}} e_{I \ i}
inline double interior_sign(int i, Blade b) { return (popcount(b & ((Blade{1} << i) - 1)) & 1) ? -1.0 : 1.0; }

// iota over the set S, applied lowest index first.
inline double interior_set_sign(Blade s, Blade b) {
  double sign = 1.0;
  while (s) {
    int i = std::countr_zero(s);
    s &= s - 1;
    sign *= interior_sign(i, b);
    b &= ~(Blade{1} << i);
  }
  return sign;
}

}  // namespace

Multivector interior(int i, const Multivector& a) {
  if (i < 0 || i >= a.dim()) throw ContractViolation("interior: index out of range");
  Multivector out(a.sig());
  const Blade bit = Blade{1} << i;
  for (Blade x = 0; x < a.size(); ++x)
    if ((x & bit) && a[x] != cplx{}) out[x ^ bit] += interior_sign(i, x) * a[x];
  return out;
}

Multivector interior(const Multivector& theta, const Multivector& a) {
  require_same_algebra(theta, a);
  if (!theta.is_homogeneous(1)) throw ContractViolation("interior: contracting form must be a one-form");
  Multivector out(a.sig());
  for (int i = 0; i < a.dim(); ++i) {
    const cplx t = theta[Blade{1} << i];
    if (t != cplx{}) out += interior(i, a) * (t * a.sig().eps(i));
  }
  return out;
}

Multivector generalized_product(const Multivector& a, const Multivector& b, int k) {
  require_same_algebra(a, b);
  if (k < 0 || k > a.dim()) throw ContractViolation("generalized_product: k out of range");
  const Signature& sig = a.sig();
  Multivector out(sig);
  const std::size_t n = a.size();
  for (Blade x = 0; x < n; ++x) {
    if (a[x] == cplx{}) continue;
    for (Blade y = 0; y < n; ++y) {
      if (b[y] == cplx{}) continue;
      const Blade common = x & y;
      if (popcount(common) < k) continue;
      // Enumerate k-subsets S of the common generators.
      for (Blade s = common;; s = (s - 1) & common) {
        if (popcount(s) == k) {
          const Blade xr = x & ~s, yr = y & ~s;
          if (!(xr & yr)) {
            double sign = sig.eps(s) * interior_set_sign(s, x) * interior_set_sign(s, y) * reorder_sign(xr, yr);
            out[xr | yr] += sign * a[x] * b[y];
          }
        }
        if (s == 0) break;
      }
    }
  }
  return out;
}

double involution_sign(int k, Involution which) {
  switch (which) {
    case Involution::parity: return (k & 1) ? -1.0 : 1.0;
    case Involution::reversion: return ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0;
    case Involution::both: return ((k * (k + 1) / 2) & 1) ? -1.0 : 1.0;
  }
  return 1.0;
}

Multivector involution(const Multivector& a, Involution which) {
  Multivector out(a);
  for (Blade x = 0; x < out.size(); ++x) out[x] *= involution_sign(popcount(x), which);
  return out;
}

Multivector adjoint_twist(const Multivector& a, int s) {
  if (s != 1 && s != -1) throw ContractViolation("adjoint type must be +1 or -1");
  return involution(a, s == 1 ? Involution::reversion : Involution::both);
}

Multivector hodge_star(const Multivector& a) {
  const Signature& sig = a.sig();
  const Blade full = full_blade(sig.dim());
  Multivector out(sig);
  for (Blade x = 0; x < a.size(); ++x) {
    if (a[x] == cplx{}) continue;
    const Blade c = full & ~x;
    out[c] += sig.eps(x) * sig.orientation * reorder_sign(x, c) * a[x];
  }
  return out;
}

cplx metric_pairing(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  cplx s{};
  for (Blade x = 0; x < a.size(); ++x) s += a.sig().eps(x) * a[x] * b[x];
  return s;
}

Multivector volume_form(const Signature& sig) {
  return Multivector::basis(sig, full_blade(sig.dim()), static_cast<double>(sig.orientation));
}

}  // namespace spinform
