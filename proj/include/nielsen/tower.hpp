#pragma once

// The data model: a tower of lattices Lambda_0 .. Lambda_c with a
// commuting unimodular action of Z^{k_0} on each upper level, plus an
// optional finite holonomy group acting per level.  Validation returns a
// list of findings instead of throwing, so a driver can show all problems
// at once.

#include <cstddef>
#include <string>
#include <vector>

#include "nielsen/linalg.hpp"
#include "nielsen/matrix.hpp"
#include "nielsen/numeric.hpp"

namespace nielsen {

struct Diagnostics {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
  void add(std::string msg) { issues.push_back(std::move(msg)); }
  void merge(const Diagnostics& o) {
    issues.insert(issues.end(), o.issues.begin(), o.issues.end());
  }
};

struct TowerSpec {
  // ranks[i] = k_i for i = 0..c
  std::vector<std::size_t> ranks;
  // gens[i-1][t] = action of the t-th basis vector of Z^{k_0} on level i
  std::vector<std::vector<IntMat>> gens;

  std::size_t levels() const { return ranks.size(); }
  std::size_t c() const { return ranks.empty() ? 0 : ranks.size() - 1; }
  std::size_t base_rank() const { return ranks.at(0); }
  std::size_t total_rank() const {
    std::size_t s = 0;
    for (auto k : ranks) s += k;
    return s;
  }

  bool operator==(const TowerSpec&) const = default;
};

inline Diagnostics validate_tower(const TowerSpec& t) {
  Diagnostics d;
  if (t.ranks.empty()) {
    d.add("tower has no levels");
    return d;
  }
  for (std::size_t i = 0; i < t.ranks.size(); ++i)
    if (t.ranks[i] == 0)
      d.add("level " + std::to_string(i) + " has rank zero");
  if (t.gens.size() != t.c()) {
    d.add("expected " + std::to_string(t.c()) + " action levels, got " +
          std::to_string(t.gens.size()));
    return d;
  }
  for (std::size_t i = 1; i <= t.c(); ++i) {
    const auto& g = t.gens[i - 1];
    if (g.size() != t.base_rank()) {
      d.add("level " + std::to_string(i) + ": expected " +
            std::to_string(t.base_rank()) + " generator matrices, got " +
            std::to_string(g.size()));
      continue;
    }
    for (std::size_t s = 0; s < g.size(); ++s) {
      if (g[s].rows() != t.ranks[i] || g[s].cols() != t.ranks[i]) {
        d.add("level " + std::to_string(i) + ", generator " +
              std::to_string(s + 1) + ": wrong size");
        continue;
      }
      const Int det = determinant(g[s]);
      if (det != 1 && det != -1)
        d.add("level " + std::to_string(i) + ", generator " +
              std::to_string(s + 1) + ": determinant " + to_string(det) +
              " is not a unit");
    }
    for (std::size_t s = 0; s < g.size(); ++s)
      for (std::size_t u = s + 1; u < g.size(); ++u)
        if (g[s].rows() == g[u].rows() && g[s].cols() == g[u].cols() &&
            g[s].rows() == t.ranks[i] && g[s] * g[u] != g[u] * g[s])
          d.add("level " + std::to_string(i) + ": generators " +
                std::to_string(s + 1) + " and " + std::to_string(u + 1) +
                " do not commute");
  }
  return d;
}

// mu_i(v) = prod_t M_{i,t}^{v_t}.  Exponents of either sign; the action
// matrices are units in GL(Z) so negative powers stay integral.
inline IntMat mu_apply(const TowerSpec& t, std::size_t level, const IntVec& v) {
  if (level == 0 || level > t.c())
    throw SemanticError("mu_apply: level out of range");
  if (v.size() != t.base_rank())
    throw SemanticError("mu_apply: exponent vector has wrong length");
  IntMat r = IntMat::identity(t.ranks[level]);
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (v[s] == 0) continue;
    r = r * power_unimodular(t.gens[level - 1][s], v[s]);
  }
  return r;
}

struct HolonomySpec {
  std::vector<std::string> labels;
  std::size_t identity = 0;
  // table[p][q] = index of the product labels[p] * labels[q]
  std::vector<std::vector<std::size_t>> table;
  // action[q][i] = A_i(q), a k_i x k_i unit
  std::vector<std::vector<IntMat>> action;
  // optional branch permutations, sigma[q] a permutation of {0..n-1}
  std::vector<std::vector<std::size_t>> sigma;

  std::size_t size() const { return labels.size(); }
  std::size_t mul(std::size_t p, std::size_t q) const { return table[p][q]; }

  bool operator==(const HolonomySpec&) const = default;
};

inline constexpr std::size_t kMaxHolonomyOrder = 1024;

inline HolonomySpec trivial_holonomy(const TowerSpec& t) {
  HolonomySpec h;
  h.labels = {"e"};
  h.identity = 0;
  h.table = {{0}};
  h.action.resize(1);
  for (std::size_t i = 0; i < t.levels(); ++i)
    h.action[0].push_back(IntMat::identity(t.ranks[i]));
  return h;
}

inline Diagnostics validate_holonomy(const HolonomySpec& h, const TowerSpec& t) {
  Diagnostics d;
  const std::size_t n = h.size();
  if (n == 0) {
    d.add("holonomy group is empty");
    return d;
  }
  if (n > kMaxHolonomyOrder) {
    d.add("holonomy order " + std::to_string(n) + " exceeds the supported bound " +
          std::to_string(kMaxHolonomyOrder));
    return d;
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (h.labels[p] == h.labels[q]) d.add("duplicate label '" + h.labels[p] + "'");
  if (h.table.size() != n) {
    d.add("multiplication table has wrong number of rows");
    return d;
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (h.table[p].size() != n) {
      d.add("multiplication table row " + std::to_string(p) + " has wrong length");
      return d;
    }
    for (std::size_t q = 0; q < n; ++q)
      if (h.table[p][q] >= n) {
        d.add("multiplication table entry out of range");
        return d;
      }
  }
  if (h.identity >= n) {
    d.add("identity label index out of range");
    return d;
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (h.mul(h.identity, q) != q || h.mul(q, h.identity) != q)
      d.add("'" + h.labels[h.identity] + "' is not an identity for '" +
            h.labels[q] + "'");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (h.mul(h.mul(a, b), c) != h.mul(a, h.mul(b, c))) {
          d.add("multiplication table is not associative at (" + h.labels[a] +
                ", " + h.labels[b] + ", " + h.labels[c] + ")");
          goto assoc_done;
        }
assoc_done:
  for (std::size_t q = 0; q < n; ++q) {
    bool has_inverse = false;
    for (std::size_t r = 0; r < n; ++r)
      if (h.mul(q, r) == h.identity && h.mul(r, q) == h.identity)
        has_inverse = true;
    if (!has_inverse) d.add("'" + h.labels[q] + "' has no inverse");
  }

  if (h.action.size() != n) {
    d.add("expected one action tuple per label");
    return d;
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (h.action[q].size() != t.levels()) {
      d.add("label '" + h.labels[q] + "': expected " +
            std::to_string(t.levels()) + " action matrices");
      return d;
    }
    for (std::size_t i = 0; i < t.levels(); ++i) {
      const IntMat& a = h.action[q][i];
      if (a.rows() != t.ranks[i] || a.cols() != t.ranks[i]) {
        d.add("label '" + h.labels[q] + "', level " + std::to_string(i) +
              ": wrong action matrix size");
        return d;
      }
      const Int det = determinant(a);
      if (det != 1 && det != -1)
        d.add("label '" + h.labels[q] + "', level " + std::to_string(i) +
              ": action matrix is not a unit (det " + to_string(det) + ")");
    }
    for (std::size_t i = 0; i < t.levels(); ++i)
      if (q == h.identity && !h.action[q][i].is_identity())
        d.add("identity label must act by the identity at level " +
              std::to_string(i));
  }
  if (!d.ok()) return d;

  // Equivariance: conjugating the level-i action of a base vector by
  // A_i(q) must equal the action of its image under A_0(q).
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 1; i <= t.c(); ++i)
      for (std::size_t s = 0; s < t.base_rank(); ++s) {
        IntVec image(t.base_rank());
        for (std::size_t r = 0; r < t.base_rank(); ++r)
          image[r] = h.action[q][0](r, s);
        const IntMat lhs =
            h.action[q][i] * t.gens[i - 1][s] * inverse_unimodular(h.action[q][i]);
        const IntMat rhs = mu_apply(t, i, image);
        if (lhs != rhs)
          d.add("label '" + h.labels[q] + "', level " + std::to_string(i) +
                ": action is not equivariant on base vector " +
                std::to_string(s + 1));
      }

  if (!h.sigma.empty()) {
    if (h.sigma.size() != n)
      d.add("sigma must assign a permutation to every label");
    std::size_t branches = h.sigma.empty() ? 0 : h.sigma[0].size();
    for (std::size_t q = 0; q < h.sigma.size() && q < n; ++q) {
      const auto& perm = h.sigma[q];
      if (perm.size() != branches) {
        d.add("sigma permutations have inconsistent sizes");
        break;
      }
      std::vector<bool> seen(branches, false);
      for (std::size_t v : perm) {
        if (v >= branches || seen[v]) {
          d.add("sigma for label '" + h.labels[q] + "' is not a permutation");
          break;
        }
        seen[v] = true;
      }
    }
    if (d.ok()) {
      if (h.sigma[h.identity] != [&] {
            std::vector<std::size_t> id(h.sigma[0].size());
            for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
            return id;
          }())
        d.add("sigma must send the identity label to the identity permutation");
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          // composition convention: sigma[p*q] = sigma[p] after sigma[q]
          const auto& sp = h.sigma[p];
          const auto& sq = h.sigma[q];
          const auto& spq = h.sigma[h.mul(p, q)];
          for (std::size_t j = 0; j < sp.size(); ++j)
            if (spq[j] != sp[sq[j]]) {
              d.add("sigma is not a homomorphism at (" + h.labels[p] + ", " +
                    h.labels[q] + ")");
              goto sigma_done;
            }
        }
    sigma_done:;
    }
  }
  return d;
}

struct InfraSpec {
  TowerSpec tower;
  HolonomySpec holonomy;

  bool operator==(const InfraSpec&) const = default;
};

inline Diagnostics validate_infra(const InfraSpec& s) {
  Diagnostics d = validate_tower(s.tower);
  if (!d.ok()) return d;
  d.merge(validate_holonomy(s.holonomy, s.tower));
  return d;
}

}  // namespace nielsen
