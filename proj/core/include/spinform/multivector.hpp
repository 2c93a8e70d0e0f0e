#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinform {

using cplx = std::complex<double>;
using Blade = std::uint32_t;

inline constexpr int kMaxDim = 8;

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Generators e^1..e^p square to +1, e^{p+1}..e^d to -1.
struct Signature {
  int p = 0;
  int q = 0;
  int orientation = 1;

  Signature() = default;
  Signature(int p_, int q_, int orientation_ = 1);

  int dim() const { return p + q; }
  double eps(int i) const { return i < p ? 1.0 : -1.0; }
  Blade negative_mask() const { return ((Blade{1} << dim()) - 1) & ~((Blade{1} << p) - 1); }
  // Product of eps_i over the generators in the blade.
  double eps(Blade b) const;
  bool same_algebra(const Signature& o) const { return p == o.p && q == o.q; }
  bool operator==(const Signature&) const = default;
  std::string str() const;
};

int popcount(Blade b);
// (-1)^{#{(i,j): i in a, j in b, i > j}}
double reorder_sign(Blade a, Blade b);
inline Blade full_blade(int d) { return (Blade{1} << d) - 1; }

class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(const Signature& sig);
  Multivector(const Signature& sig, std::vector<cplx> coeffs);

  static Multivector scalar(const Signature& sig, cplx c);
  static Multivector basis(const Signature& sig, Blade b, cplx c = 1.0);
  static Multivector one_form(const Signature& sig, std::span<const cplx> comps);
  static Multivector one_form(const Signature& sig, std::span<const double> comps);

  const Signature& sig() const { return sig_; }
  int dim() const { return sig_.dim(); }
  std::size_t size() const { return c_.size(); }

  cplx& operator[](Blade b) { return c_[b]; }
  const cplx& operator[](Blade b) const { return c_[b]; }
  const std::vector<cplx>& coeffs() const { return c_; }
  std::vector<cplx>& coeffs() { return c_; }

  cplx scalar_part() const { return c_.empty() ? cplx{} : c_[0]; }
  Multivector grade(int k) const;
  Multivector grades_upto(int k) const;
  int max_grade() const;  // -1 for zero
  bool is_homogeneous(int k, double tol = 0.0) const;

  Multivector conj() const;
  Multivector real() const;
  Multivector imag() const;
  double norm() const;
  double norm_inf() const;
  bool is_zero(double tol = 0.0) const { return norm_inf() <= tol; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(cplx s);

 private:
  Signature sig_;
  std::vector<cplx> c_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(Multivector a, cplx s);
Multivector operator*(cplx s, Multivector a);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);

void require_same_algebra(const Multivector& a, const Multivector& b);

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector wedge(const Multivector& a, const Multivector& b);
// Metric-free contraction with the dual basis vector e_i.
Multivector interior(int i, const Multivector& a);
// iota_{theta^sharp} with eps-weighted components.
Multivector interior(const Multivector& theta, const Multivector& a);
Multivector generalized_product(const Multivector& a, const Multivector& b, int k);

enum class Involution { parity, reversion, both };
Multivector involution(const Multivector& a, Involution which);
// pi^{(1-s)/2} o tau
Multivector adjoint_twist(const Multivector& a, int s);
double involution_sign(int grade, Involution which);

Multivector hodge_star(const Multivector& a);
cplx metric_pairing(const Multivector& a, const Multivector& b);
Multivector volume_form(const Signature& sig);

inline Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

}  // namespace spinform
