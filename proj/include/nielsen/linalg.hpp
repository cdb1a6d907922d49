#pragma once

// Determinants and inverses in exact arithmetic.  The determinant uses
// fraction-free (Bareiss) elimination: every division along the way is
// exact by the subresultant identity, so integer matrices stay integer
// and there is no rounding anywhere to reason about.

#include <cstddef>

#include "nielsen/matrix.hpp"
#include "nielsen/numeric.hpp"

namespace nielsen {

template <typename T>
T determinant(Matrix<T> m) {
  if (!m.is_square()) throw SemanticError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);

  T prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return T(0);
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_div(T(m(i, j) * m(k, k) - m(i, k) * m(k, j)), prev);
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : T(-m(n - 1, n - 1));
}

inline Rat determinant_rat(const RatMat& m) { return determinant(m); }

// Gauss-Jordan inverse over the rationals; throws on singular input.
inline RatMat inverse(const RatMat& m) {
  if (!m.is_square()) throw SemanticError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw ComputationError("singular matrix has no inverse");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    const Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// Inverse of a matrix in GL(Z); defined exactly when det = +-1.
inline IntMat inverse_unimodular(const IntMat& m) {
  const Int d = determinant(m);
  if (d != 1 && d != -1)
    throw SemanticError("matrix is not unimodular (det " + to_string(d) + ")");
  return to_integral(inverse(to_rational(m)));
}

// m^e for a unimodular m, e of either sign.
inline IntMat power_unimodular(const IntMat& m, const Int& e) {
  IntMat base = e < 0 ? inverse_unimodular(m) : m;
  Int k = abs(e);
  IntMat r = IntMat::identity(m.rows());
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

// Solves a x = b over the rationals for square nonsingular a.
inline RatVec solve(const RatMat& a, const RatVec& b) {
  const RatMat inv = inverse(a);
  return inv.apply(b);
}

}  // namespace nielsen
