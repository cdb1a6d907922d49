#pragma once

// Sublattices of Z^k, stored by their canonical column Hermite generator
// matrix (zero columns stripped).  Because the stored form is canonical,
// equality of lattices is equality of the stored data.

#include <cstddef>
#include <optional>

#include "nielsen/hnf.hpp"
#include "nielsen/linalg.hpp"
#include "nielsen/matrix.hpp"
#include "nielsen/numeric.hpp"
#include "nielsen/smith.hpp"

namespace nielsen {

class Sublattice {
public:
  static Sublattice from_generators(const IntMat& g) {
    const HermiteResult hr = hermite_normal_form(g);
    const std::size_t r = nonzero_columns(hr.h);
    IntMat gens(g.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < g.rows(); ++i) gens(i, j) = hr.h(i, j);
    return Sublattice(g.rows(), gens);
  }

  static Sublattice full(std::size_t k) {
    return Sublattice(k, IntMat::identity(k));
  }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return gens_.cols(); }
  const IntMat& generators() const { return gens_; }

  // Integer coordinates of v in the generator basis, if v lies in the
  // lattice.  Exploits the echelon shape: at the pivot row of column j
  // only columns >= j can be nonzero, so back-substitution from the last
  // pivot works over Z directly.
  std::optional<IntVec> coordinates(const IntVec& v) const {
    if (v.size() != ambient_) throw SemanticError("vector/ambient rank mismatch");
    const std::size_t r = rank();
    IntVec x(r, Int(0));
    for (std::size_t jj = r; jj-- > 0;) {
      const std::size_t row = pivot_row(jj);
      Int rest = v[row];
      for (std::size_t l = jj + 1; l < r; ++l) rest -= gens_(row, l) * x[l];
      Int q, rem;
      mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), rest.get_mpz_t(),
                  gens_(row, jj).get_mpz_t());
      if (rem != 0) return std::nullopt;
      x[jj] = q;
    }
    // Non-pivot rows still have to match.
    IntVec check(ambient_, Int(0));
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < ambient_; ++i) check[i] += gens_(i, j) * x[j];
    for (std::size_t i = 0; i < ambient_; ++i)
      if (check[i] != v[i]) return std::nullopt;
    return x;
  }

  bool contains(const IntVec& v) const { return coordinates(v).has_value(); }

  bool contains(const Sublattice& other) const {
    if (other.ambient_ != ambient_) return false;
    for (std::size_t j = 0; j < other.rank(); ++j)
      if (!contains(other.gens_.column(j))) return false;
    return true;
  }

  bool operator==(const Sublattice& o) const {
    return ambient_ == o.ambient_ && gens_ == o.gens_;
  }
  bool operator!=(const Sublattice& o) const { return !(*this == o); }

private:
  Sublattice(std::size_t ambient, IntMat gens)
      : ambient_(ambient), gens_(std::move(gens)) {}

  std::size_t pivot_row(std::size_t j) const {
    for (std::size_t i = ambient_; i-- > 0;)
      if (gens_(i, j) != 0) return i;
    throw ComputationError("zero column in canonical generators");
  }

  std::size_t ambient_;
  IntMat gens_;
};

// Smallest sublattice of the same rank containing L whose quotient in it
// is torsion free: divide the Smith invariants out of the generators.
// With U*G*V = D diagonal, the columns of U^-1 scaled by d_i span L, so
// dropping the scales spans the saturation.
inline Sublattice saturate(const Sublattice& l) {
  const std::size_t r = l.rank();
  if (r == 0) return l;
  const SmithResult s = smith_normal_form(l.generators());
  const IntMat uinv = inverse_unimodular(s.u);
  IntMat gens(l.ambient_rank(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < l.ambient_rank(); ++i) gens(i, j) = uinv(i, j);
  return Sublattice::from_generators(gens);
}

// [L' : L] for L contained in L'.  Finite exactly when the ranks agree;
// then it is the product of the Smith invariants of the coordinate matrix
// of L's generators in L's basis.
inline ExtendedNat index_in(const Sublattice& l, const Sublattice& lp) {
  if (l.ambient_rank() != lp.ambient_rank())
    throw SemanticError("index_in: ambient ranks differ");
  const std::size_t r = l.rank(), rp = lp.rank();
  IntMat coords(rp, r);
  for (std::size_t j = 0; j < r; ++j) {
    const auto x = lp.coordinates(l.generators().column(j));
    if (!x) throw SemanticError("index_in: first lattice is not contained in second");
    for (std::size_t i = 0; i < rp; ++i) coords(i, j) = (*x)[i];
  }
  if (r < rp) return {false, Int(0)};
  return cokernel_order(coords);
}

}  // namespace nielsen
