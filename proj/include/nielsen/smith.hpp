#pragma once

// Smith normal form over Z: U*A*V = D with U, V unimodular and D diagonal,
// d_1 | d_2 | ... , all nonnegative, zeros trailing.  The divisibility
// chain is enforced during elimination (a pivot that fails to divide the
// remaining block absorbs the offending row and is re-reduced), so no
// separate fix-up pass is needed.

#include <cstddef>

#include "nielsen/matrix.hpp"
#include "nielsen/numeric.hpp"

namespace nielsen {

struct SmithResult {
  IntMat d;
  IntMat u;  // row operations:    u is rows(a) x rows(a)
  IntMat v;  // column operations: v is cols(a) x cols(a)
};

inline SmithResult smith_normal_form(const IntMat& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMat d = a;
  IntMat u = IntMat::identity(m);
  IntMat v = IntMat::identity(n);

  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(d(x, j), d(y, j));
    for (std::size_t j = 0; j < m; ++j) std::swap(u(x, j), u(y, j));
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(d(i, x), d(i, y));
    for (std::size_t i = 0; i < n; ++i) std::swap(v(i, x), v(i, y));
  };
  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < n; ++j) d(dst, j) -= q * d(src, j);
    for (std::size_t j = 0; j < m; ++j) u(dst, j) -= q * u(src, j);
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m; ++i) d(i, dst) -= q * d(i, src);
    for (std::size_t i = 0; i < n; ++i) v(i, dst) -= q * v(i, src);
  };

  const std::size_t steps = m < n ? m : n;
  for (std::size_t t = 0; t < steps; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 &&
            (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;  // trailing block is zero
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (bool settled = false; !settled;) {
      settled = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), d(i, t).get_mpz_t(),
                    d(t, t).get_mpz_t());
        row_sub(i, t, q);
        if (r != 0) {
          swap_rows(t, i);  // strictly smaller pivot, go again
          settled = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), d(t, j).get_mpz_t(),
                    d(t, t).get_mpz_t());
        col_sub(j, t, q);
        if (r != 0) {
          swap_cols(t, j);
          settled = false;
        }
      }
      if (!settled) continue;

      // Pivot must divide everything it will later be compared against.
      for (std::size_t i = t + 1; i < m && settled; ++i)
        for (std::size_t j = t + 1; j < n && settled; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_sub(t, i, Int(-1));  // pull the offending row in
            settled = false;
          }
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
    }
  }
  return {d, u, v};
}

// Order of Z^n / A Z^n for square A: the product of the Smith invariants,
// infinite (finite = false) when A is singular.
struct ExtendedNat {
  bool finite;
  Int value;  // meaningful only when finite

  bool operator==(const ExtendedNat& o) const {
    return finite == o.finite && (!finite || value == o.value);
  }
  std::string str() const { return finite ? to_string(value) : "infinite"; }
};

inline ExtendedNat cokernel_order(const IntMat& a) {
  if (!a.is_square()) throw SemanticError("cokernel_order needs a square matrix");
  const SmithResult s = smith_normal_form(a);
  Int prod(1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (s.d(i, i) == 0) return {false, Int(0)};
    prod *= s.d(i, i);
  }
  return {true, prod};
}

}  // namespace nielsen
