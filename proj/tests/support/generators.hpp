#pragma once

// Hand-rolled generators and a list-based blade product used as an independent oracle.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <spinform/multivector.hpp>

namespace gen {

using spinform::Blade;
using spinform::cplx;
using spinform::Multivector;
using spinform::Signature;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return uniform(0, 1) < p; }

  // Mix of magnitudes so cancellations and scaling both get exercised.
  cplx coefficient(bool real_only = false) {
    const double scale = std::pow(10.0, integer(-1, 1));
    const double re = scale * uniform(-1, 1);
    return real_only ? cplx(re, 0) : cplx(re, scale * uniform(-1, 1));
  }

  Signature signature(int dmin, int dmax) {
    const int d = integer(dmin, dmax);
    const int p = integer(0, d);
    return Signature(p, d - p);
  }

  // Dense, sparse, or single-grade, chosen at random.
  Multivector multivector(const Signature& sig, bool real_only = false) {
    Multivector m(sig);
    const int shape = integer(0, 2);
    const int k = integer(0, sig.dim());
    for (Blade b = 0; b < m.size(); ++b) {
      if (shape == 1 && !coin(0.3)) continue;
      if (shape == 2 && std::popcount(b) != k) continue;
      m[b] = coefficient(real_only);
    }
    return m;
  }

  Multivector homogeneous(const Signature& sig, int k, bool real_only = false) {
    Multivector m(sig);
    for (Blade b = 0; b < m.size(); ++b)
      if (std::popcount(b) == k) m[b] = coefficient(real_only);
    return m;
  }

  std::vector<double> point(int n, double lo, double hi) {
    std::vector<double> x(n);
    for (double& v : x) v = uniform(lo, hi);
    return x;
  }
};

// e_{a1} ... e_{an} e_{b1} ... e_{bm} by bubble sort on index lists, contracting equal neighbours.
inline std::pair<double, Blade> list_product(Blade a, Blade b, const Signature& sig) {
  std::vector<int> idx;
  for (int i = 0; i < sig.dim(); ++i)
    if (a >> i & 1) idx.push_back(i);
  for (int i = 0; i < sig.dim(); ++i)
    if (b >> i & 1) idx.push_back(i);
  double sign = 1;
  for (std::size_t pass = 0; pass < idx.size(); ++pass)
    for (std::size_t j = 0; j + 1 < idx.size(); ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  std::vector<int> out;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (j + 1 < idx.size() && idx[j] == idx[j + 1]) {
      sign *= sig.eps(idx[j]);
      ++j;
      continue;
    }
    out.push_back(idx[j]);
  }
  Blade r = 0;
  for (int i : out) r |= Blade{1} << i;
  return {sign, r};
}

inline Multivector oracle_product(const Multivector& x, const Multivector& y) {
  Multivector out(x.sig());
  for (Blade a = 0; a < x.size(); ++a)
    for (Blade b = 0; b < y.size(); ++b) {
      if (x[a] == cplx{} || y[b] == cplx{}) continue;
      const auto [s, r] = list_product(a, b, x.sig());
      out[r] += s * x[a] * y[b];
    }
  return out;
}

inline double rel_diff(const Multivector& a, const Multivector& b) {
  return (a - b).norm_inf() / std::max(1.0, std::max(a.norm_inf(), b.norm_inf()));
}

}  // namespace gen
