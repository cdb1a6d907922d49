#pragma once

// Exact real-root counting via Sturm sequences over Q.  Used to certify
// that a characteristic polynomial has all roots real and strictly
// positive, which in turn certifies that a family of eigenvalues generates
// a torsion-free multiplicative group.

#include <cstddef>
#include <vector>

#include "nielsen/numeric.hpp"
#include "nielsen/polynomial.hpp"

namespace nielsen {

namespace detail {

using RatPoly = std::vector<Rat>;  // lowest degree first, top nonzero

inline void rp_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly rp_from(const IntPoly& p) {
  RatPoly r(p.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = Rat(p.coeff(i));
  return r;
}

inline int rp_degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly rp_derivative(const RatPoly& p) {
  if (p.size() <= 1) return {};
  RatPoly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rat(Int(i));
  return r;
}

struct RatDivMod {
  RatPoly quotient;
  RatPoly remainder;
};

inline RatDivMod rp_divmod(const RatPoly& a, const RatPoly& b) {
  RatPoly r = a;
  rp_trim(r);
  const int db = rp_degree(b);
  if (db < 0) throw ComputationError("polynomial division by zero");
  RatPoly quo(rp_degree(r) >= db ? r.size() - b.size() + 1 : 0, Rat(0));
  while (rp_degree(r) >= db) {
    const Rat f = r.back() / b.back();
    const std::size_t shift = r.size() - b.size();
    quo[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
    r.pop_back();
    rp_trim(r);
  }
  return {std::move(quo), std::move(r)};
}

inline RatPoly rp_monic(RatPoly p) {
  rp_trim(p);
  if (p.empty()) return p;
  const Rat lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
  rp_trim(a);
  rp_trim(b);
  while (!b.empty()) {
    RatPoly r = rp_divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return rp_monic(a);
}

// p with all repeated factors collapsed: p / gcd(p, p').
inline RatPoly rp_squarefree(const IntPoly& p) {
  RatPoly q = rp_monic(rp_from(p));
  const RatPoly g = rp_gcd(q, rp_derivative(q));
  if (rp_degree(g) > 0) q = rp_monic(rp_divmod(q, g).quotient);
  return q;
}

inline Rat rp_eval(const RatPoly& p, const Rat& x) {
  Rat r(0);
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

// Sturm chain of a squarefree polynomial.
inline std::vector<RatPoly> sturm_chain(const RatPoly& q) {
  std::vector<RatPoly> chain;
  chain.push_back(q);
  RatPoly d = rp_derivative(q);
  rp_trim(d);
  if (!d.empty()) chain.push_back(d);
  while (chain.size() >= 2 && rp_degree(chain.back()) > 0) {
    RatPoly r = rp_divmod(chain[chain.size() - 2], chain.back()).remainder;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

inline int variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(sgn(rp_eval(p, x)));
  return variations(signs);
}

inline int variations_at_infinity(const std::vector<RatPoly>& chain, bool plus) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) {
    if (p.empty()) {
      signs.push_back(0);
      continue;
    }
    int s = sgn(p.back());
    if (!plus && rp_degree(p) % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

}  // namespace detail

// Number of distinct real roots of p.
inline int count_distinct_real_roots(const IntPoly& p) {
  using namespace detail;
  if (p.is_zero()) throw SemanticError("root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  const auto chain = sturm_chain(rp_squarefree(p));
  return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

// True when every root of p (with any multiplicity) is real and > 0.
// Counting distinct roots of the squarefree part in (0, oo) is enough: if
// that count reaches the squarefree degree, no root is complex, negative
// or zero.
inline bool all_roots_real_positive(const IntPoly& p) {
  using namespace detail;
  if (p.is_zero()) throw SemanticError("root test of the zero polynomial");
  if (p.degree() == 0) return true;
  if (p.coeff(0) == 0) return false;  // root at zero
  const RatPoly q = rp_squarefree(p);
  const auto chain = sturm_chain(q);
  const int positive =
      variations_at(chain, Rat(0)) - variations_at_infinity(chain, true);
  return positive == rp_degree(q);
}

}  // namespace nielsen
