#pragma once

// Morphisms of a tower relative to a chain of finite-index sublattices.
// Level i carries a nonsingular integer matrix B_i whose columns span the
// sublattice on which the map is defined, and a rational linearisation
// matrix F_i with F_i B_i integral.  Compatibility ties consecutive
// levels together: F_i must intertwine the exponent action through F_0.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/lattice.hpp"
#include "nielsen/linalg.hpp"
#include "nielsen/matrix.hpp"
#include "nielsen/numeric.hpp"
#include "nielsen/smith.hpp"
#include "nielsen/tower.hpp"

namespace nielsen {

struct SublatticeChain {
  std::vector<IntMat> b;  // b[i] is k_i x k_i, det != 0
  std::size_t levels() const { return b.size(); }

  bool operator==(const SublatticeChain&) const = default;
};

inline SublatticeChain identity_chain(const TowerSpec& t) {
  SublatticeChain c;
  for (std::size_t i = 0; i < t.levels(); ++i)
    c.b.push_back(IntMat::identity(t.ranks[i]));
  return c;
}

inline SublatticeChain scale_chain(const SublatticeChain& c, const Int& s) {
  if (s == 0) throw SemanticError("chain scale factor must be nonzero");
  SublatticeChain r;
  for (const IntMat& m : c.b) r.b.push_back(m * s);
  return r;
}

inline Diagnostics validate_chain(const SublatticeChain& c, const TowerSpec& t) {
  Diagnostics d;
  if (c.levels() != t.levels()) {
    d.add("chain has " + std::to_string(c.levels()) + " levels, tower has " +
          std::to_string(t.levels()));
    return d;
  }
  for (std::size_t i = 0; i < c.levels(); ++i) {
    if (c.b[i].rows() != t.ranks[i] || c.b[i].cols() != t.ranks[i]) {
      d.add("chain level " + std::to_string(i) + ": wrong matrix size");
      continue;
    }
    if (determinant(c.b[i]) == 0)
      d.add("chain level " + std::to_string(i) + ": matrix is singular");
  }
  return d;
}

struct TowerMorphism {
  SublatticeChain chain;
  std::vector<RatMat> f;  // linearisation matrices, f[i] is k_i x k_i
  std::size_t levels() const { return f.size(); }

  bool operator==(const TowerMorphism&) const = default;
};

inline TowerMorphism identity_morphism(const TowerSpec& t) {
  TowerMorphism m;
  m.chain = identity_chain(t);
  for (std::size_t i = 0; i < t.levels(); ++i)
    m.f.push_back(to_rational(IntMat::identity(t.ranks[i])));
  return m;
}

inline Diagnostics validate_morphism(const TowerMorphism& m, const TowerSpec& t) {
  Diagnostics d = validate_chain(m.chain, t);
  if (!d.ok()) return d;
  if (m.f.size() != t.levels()) {
    d.add("morphism has " + std::to_string(m.f.size()) + " levels, tower has " +
          std::to_string(t.levels()));
    return d;
  }
  for (std::size_t i = 0; i < m.f.size(); ++i) {
    if (m.f[i].rows() != t.ranks[i] || m.f[i].cols() != t.ranks[i]) {
      d.add("morphism level " + std::to_string(i) + ": wrong matrix size");
      return d;
    }
    if (!is_integral(m.f[i] * to_rational(m.chain.b[i])))
      d.add("morphism level " + std::to_string(i) +
            ": images of the chain basis are not integral");
  }
  if (!d.ok()) return d;

  // Compatibility across levels, checked on the columns of B_0; the
  // exponent action is a homomorphism in the exponent, so verifying a
  // basis of the domain sublattice verifies all of it.
  for (std::size_t i = 1; i <= t.c(); ++i)
    for (std::size_t scol = 0; scol < t.base_rank(); ++scol) {
      IntVec v(t.base_rank());
      for (std::size_t r = 0; r < t.base_rank(); ++r) v[r] = m.chain.b[0](r, scol);
      const RatVec image_rat = m.f[0].apply(to_rational_vec(v));
      IntVec image(image_rat.size());
      for (std::size_t r = 0; r < image_rat.size(); ++r) {
        if (!is_integer(image_rat[r]))
          throw ComputationError("morphism level 0: non-integral image of a "
                                 "chain basis vector slipped past validation");
        image[r] = to_int(image_rat[r]);
      }
      const RatMat lhs = m.f[i] * to_rational(mu_apply(t, i, v));
      const RatMat rhs = to_rational(mu_apply(t, i, image)) * m.f[i];
      if (lhs != rhs) {
        d.add("morphism level " + std::to_string(i) +
              ": incompatible with the exponent action on chain basis vector " +
              std::to_string(scol + 1));
        return d;
      }
    }
  return d;
}

// Recover the linearisation matrices from integer images of the chain
// bases: F_i = Y_i * B_i^{-1}.
inline TowerMorphism linearisation_matrices(const SublatticeChain& chain,
                                            const std::vector<IntMat>& images,
                                            const TowerSpec& t) {
  Diagnostics cd = validate_chain(chain, t);
  if (!cd.ok()) throw SemanticError(cd.issues.front());
  if (images.size() != chain.levels())
    throw SemanticError("expected one image matrix per chain level");
  TowerMorphism m;
  m.chain = chain;
  for (std::size_t i = 0; i < chain.levels(); ++i) {
    if (images[i].rows() != chain.b[i].rows() ||
        images[i].cols() != chain.b[i].cols())
      throw SemanticError("image matrix at level " + std::to_string(i) +
                          " has the wrong size");
    m.f.push_back(to_rational(images[i]) * inverse(to_rational(chain.b[i])));
  }
  Diagnostics md = validate_morphism(m, t);
  if (!md.ok()) throw SemanticError(md.issues.front());
  return m;
}

// Compose a morphism with the action of a holonomy label: level i becomes
// A_i(q) * F_i.  The chain is unchanged; validity is preserved because the
// holonomy action is equivariant and unimodular.
inline TowerMorphism twist_by_holonomy(const TowerMorphism& m,
                                       const InfraSpec& s, std::size_t q) {
  if (q >= s.holonomy.size())
    throw SemanticError("holonomy label index out of range");
  TowerMorphism r;
  r.chain = m.chain;
  for (std::size_t i = 0; i < m.f.size(); ++i)
    r.f.push_back(to_rational(s.holonomy.action[q][i]) * m.f[i]);
  return r;
}

// Product over levels of [Z^{k_i} : B_i Z^{k_i}] = |det B_i|.  Each factor
// is recomputed through the lattice-index routine as a self-check; a
// mismatch would mean an internal arithmetic bug, not bad input.
inline Int index_product(const SublatticeChain& c) {
  Int prod = 1;
  for (const IntMat& b : c.b) {
    Int d = determinant(b);
    if (d < 0) d = -d;
    if (d == 0) throw SemanticError("chain matrix is singular");
    const ExtendedNat idx =
        index_in(Sublattice::from_generators(b), Sublattice::full(b.rows()));
    if (!idx.finite || idx.value != d)
      throw std::logic_error("index product self-check failed: |det| = " +
                             to_string(d) + " but lattice index = " + idx.str());
    prod *= d;
  }
  return prod;
}

// Restricting a morphism to a finer chain and re-deriving its
// linearisation matrices must return the same matrices.  The refinement
// must satisfy span(R_i) inside span(B_i) levelwise.
inline Diagnostics restriction_invariance_check(const TowerMorphism& m,
                                                const SublatticeChain& finer,
                                                const TowerSpec& t) {
  Diagnostics d = validate_chain(finer, t);
  if (!d.ok()) return d;
  for (std::size_t i = 0; i < finer.levels(); ++i) {
    const auto sub = Sublattice::from_generators(finer.b[i]);
    const auto big = Sublattice::from_generators(m.chain.b[i]);
    if (!big.contains(sub))
      throw SemanticError("refinement chain is not contained in the "
                          "morphism's chain at level " + std::to_string(i));
  }
  for (std::size_t i = 0; i < finer.levels(); ++i) {
    const RatMat image = m.f[i] * to_rational(finer.b[i]);
    if (!is_integral(image)) {
      d.add("level " + std::to_string(i) +
            ": images of the refined basis are not integral");
      continue;
    }
    const RatMat recovered =
        to_rational(to_integral(image)) * inverse(to_rational(finer.b[i]));
    if (recovered != m.f[i])
      d.add("level " + std::to_string(i) +
            ": linearisation matrices changed under restriction");
  }
  return d;
}

}  // namespace nielsen
