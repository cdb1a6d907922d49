#pragma once

// Column-style Hermite normal form.  H = A*U with U unimodular; nonzero
// columns come first, the bottommost nonzero entry of each column (its
// pivot) is positive, pivot rows strictly increase left to right, and in
// every pivot row the entries to the right of the pivot are reduced into
// [0, pivot).  This is the single canonical shape used to compare and
// store lattices, so equality of column spans is equality of data.

#include <cstddef>
#include <vector>

#include "nielsen/matrix.hpp"

namespace nielsen {

struct HermiteResult {
  IntMat h;  // the normal form
  IntMat u;  // column operations applied: h = a * u
};

namespace detail {

inline void negate_column(IntMat& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

inline void swap_columns(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// col_dst -= q * col_src
inline void add_column_multiple(IntMat& m, std::size_t dst, std::size_t src,
                                const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

}  // namespace detail

inline HermiteResult hermite_normal_form(const IntMat& a) {
  using namespace detail;
  const std::size_t k = a.rows(), n = a.cols();
  IntMat h = a;
  IntMat u = IntMat::identity(n);

  // Pivots are placed bottom row first, each occupying the rightmost
  // still-active column; active columns keep zeros in all processed rows.
  std::size_t active = n;
  for (std::size_t ii = k; ii-- > 0 && active > 0;) {
    const std::size_t i = ii;
    bool any = false;
    for (std::size_t j = 0; j < active; ++j)
      if (h(i, j) != 0) {
        any = true;
        break;
      }
    if (!any) continue;

    // Gcd elimination across the active columns until only one carries a
    // nonzero entry in row i.
    while (true) {
      std::size_t best = active;
      for (std::size_t j = 0; j < active; ++j)
        if (h(i, j) != 0 && (best == active || abs(h(i, j)) < abs(h(i, best))))
          best = j;
      swap_columns(h, best, active - 1);
      swap_columns(u, best, active - 1);
      bool clean = true;
      for (std::size_t j = 0; j + 1 < active; ++j) {
        if (h(i, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(),
                   h(i, active - 1).get_mpz_t());
        add_column_multiple(h, j, active - 1, q);
        add_column_multiple(u, j, active - 1, q);
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }

    const std::size_t piv = active - 1;
    if (h(i, piv) < 0) {
      negate_column(h, piv);
      negate_column(u, piv);
    }
    // Reduce this pivot row across the already-placed pivot columns.
    for (std::size_t l = active; l < n; ++l) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, l).get_mpz_t(), h(i, piv).get_mpz_t());
      add_column_multiple(h, l, piv, q);
      add_column_multiple(u, l, piv, q);
    }
    --active;
  }

  // Rotate the pivot block to the front so zero columns trail.
  if (active > 0 && active < n) {
    IntMat h2(k, n), u2(n, n);
    for (std::size_t j = active; j < n; ++j)
      for (std::size_t i = 0; i < k; ++i) h2(i, j - active) = h(i, j);
    for (std::size_t j = 0; j < active; ++j)
      for (std::size_t i = 0; i < k; ++i) h2(i, n - active + j) = h(i, j);
    for (std::size_t j = active; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) u2(i, j - active) = u(i, j);
    for (std::size_t j = 0; j < active; ++j)
      for (std::size_t i = 0; i < n; ++i) u2(i, n - active + j) = u(i, j);
    h = h2;
    u = u2;
  }
  return {h, u};
}

inline std::size_t nonzero_columns(const IntMat& h) {
  std::size_t r = 0;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    bool nz = false;
    for (std::size_t i = 0; i < h.rows(); ++i)
      if (h(i, j) != 0) {
        nz = true;
        break;
      }
    if (nz) ++r;
  }
  return r;
}

}  // namespace nielsen
