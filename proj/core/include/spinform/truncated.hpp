#pragma once

#include "spinform/multivector.hpp"

namespace spinform {

// Odd d only: forms of grade <= (d-1)/2 with the branch label ell.
class TruncatedMultivector {
 public:
  TruncatedMultivector(Multivector mv, int ell);

  const Multivector& mv() const { return mv_; }
  int ell() const { return ell_; }
  const Signature& sig() const { return mv_.sig(); }
  int max_grade() const { return (mv_.dim() - 1) / 2; }

 private:
  Multivector mv_;
  int ell_;
};

int truncation_degree(const Signature& sig);
// i^k for integer k
cplx ipow(int k);

Multivector complex_volume(const Signature& sig);
Multivector project_ell(const Multivector& a, int ell);
// P_< : drop grades above (d-1)/2.
Multivector project_lower(const Multivector& a);
TruncatedMultivector truncate(const Multivector& a, int ell);
// P_ell restricted to the truncated forms (lands in the ell-block of the full algebra).
Multivector lift(const TruncatedMultivector& a);

TruncatedMultivector vee_product(const TruncatedMultivector& a, const TruncatedMultivector& b);
// The Hodge-star presentation of the same product.
TruncatedMultivector vee_product_hodge(const TruncatedMultivector& a, const TruncatedMultivector& b);

inline TruncatedMultivector operator+(const TruncatedMultivector& a, const TruncatedMultivector& b) {
  return TruncatedMultivector(a.mv() + b.mv(), a.ell());
}
inline TruncatedMultivector operator*(cplx s, const TruncatedMultivector& a) {
  return TruncatedMultivector(s * a.mv(), a.ell());
}

}  // namespace spinform
