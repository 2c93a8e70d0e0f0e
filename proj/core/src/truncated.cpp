#include "spinform/truncated.hpp"

namespace spinform {

namespace {

void require_odd(const Signature& sig) {
  if (sig.dim() % 2 == 0) throw ContractViolation("truncated algebra needs odd dimension, got " + sig.str());
}

void require_ell(int ell) {
  if (ell != 1 && ell != -1) throw ContractViolation("ell must be +1 or -1");
}

}  // namespace

TruncatedMultivector::TruncatedMultivector(Multivector mv, int ell) : mv_(std::move(mv)), ell_(ell) {
  require_odd(mv_.sig());
  require_ell(ell_);
  const int kmax = max_grade();
  for (Blade b = 0; b < mv_.size(); ++b)
    if (popcount(b) > kmax && mv_[b] != cplx{})
      throw ContractViolation("truncated multivector has a component above grade " + std::to_string(kmax));
}

int truncation_degree(const Signature& sig) {
  require_odd(sig);
  return (sig.dim() - 1) / 2;
}

cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

Multivector complex_volume(const Signature& sig) {
  require_odd(sig);
  return ipow(sig.q + (sig.dim() - 1) / 2) * volume_form(sig);
}

Multivector project_ell(const Multivector& a, int ell) {
  require_ell(ell);
  const Multivector nu = complex_volume(a.sig());
  return 0.5 * (a + static_cast<double>(ell) * geometric_product(nu, a));
}

Multivector project_lower(const Multivector& a) { return a.grades_upto(truncation_degree(a.sig())); }

TruncatedMultivector truncate(const Multivector& a, int ell) { return TruncatedMultivector(project_lower(a), ell); }

Multivector lift(const TruncatedMultivector& a) { return project_ell(a.mv(), a.ell()); }

static void require_same_branch(const TruncatedMultivector& a, const TruncatedMultivector& b) {
  require_same_algebra(a.mv(), b.mv());
  if (a.ell() != b.ell()) throw ContractViolation("vee_product: branch mismatch");
}

TruncatedMultivector vee_product(const TruncatedMultivector& a, const TruncatedMultivector& b) {
  require_same_branch(a, b);
  return TruncatedMultivector(2.0 * project_lower(project_ell(geometric_product(a.mv(), b.mv()), a.ell())), a.ell());
}

TruncatedMultivector vee_product_hodge(const TruncatedMultivector& a, const TruncatedMultivector& b) {
  require_same_branch(a, b);
  const Signature& sig = a.sig();
  const Multivector ab = geometric_product(a.mv(), b.mv());
  const cplx c = ipow(sig.q + (sig.dim() - 1) / 2) * static_cast<double>(a.ell());
  return TruncatedMultivector(project_lower(ab + c * hodge_star(involution(ab, Involution::reversion))), a.ell());
}

}  // namespace spinform
