#pragma once

// Spectral analysis of the tower action.  A tower is "net" when the
// lattice group it presents is torsion-free and poly-Z; sufficient
// certificates are (a) every generator unipotent, or (b) every action
// matrix produced by exponents in a sweep box having all-real, positive
// spectrum.  Both certificates only need to be checked on the box: each
// basis exponent lies in any box of radius >= 1, commuting matrices are
// simultaneously triangularisable, so positivity of the generators'
// spectra transfers to every product of their powers.
//
// A tower fails the weaker "no roots of unity" (NR) property exactly when
// some exponent produces an action matrix with an eigenvalue that is a
// nontrivial root of unity; a witness is an exponent vector plus the
// cyclotomic order found in its characteristic polynomial.  For base rank
// one, checking the single generator is exact: an eigenvalue of M^v is a
// root of unity iff the matching eigenvalue of M is.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/matrix.hpp"
#include "nielsen/numeric.hpp"
#include "nielsen/polynomial.hpp"
#include "nielsen/sturm.hpp"
#include "nielsen/tower.hpp"

namespace nielsen {

enum class NetStatus { Net, NrOnly, NotNr, Unknown };

inline std::string to_string(NetStatus s) {
  switch (s) {
    case NetStatus::Net: return "net";
    case NetStatus::NrOnly: return "nr-only";
    case NetStatus::NotNr: return "not-nr";
    case NetStatus::Unknown: return "unknown";
  }
  return "unknown";
}

struct RootOfUnityWitness {
  std::size_t level = 0;
  IntVec exponent;
  unsigned long order = 1;  // order of the root of unity found, > 1
};

struct LevelVerdict {
  std::size_t level = 0;
  NetStatus status = NetStatus::Unknown;
  std::string certificate;
  std::optional<RootOfUnityWitness> witness;
};

struct NetnessVerdict {
  std::vector<LevelVerdict> levels;  // one entry per level 1..c
  long box_bound = 0;

  NetStatus overall() const {
    NetStatus r = NetStatus::Net;
    for (const auto& l : levels) {
      if (l.status == NetStatus::NotNr) return NetStatus::NotNr;
      if (l.status == NetStatus::Unknown) r = NetStatus::Unknown;
      if (l.status == NetStatus::NrOnly && r == NetStatus::Net)
        r = NetStatus::NrOnly;
    }
    return r;
  }
  bool is_net() const { return overall() == NetStatus::Net; }
};

namespace detail {

// Visit every integer vector with entries in [-bound, bound], in
// lexicographic order, until fn returns false.
inline void for_each_box_vector(std::size_t dim, long bound,
                                const std::function<bool(const IntVec&)>& fn) {
  IntVec v(dim, Int(-bound));
  if (dim == 0) {
    fn(v);
    return;
  }
  while (true) {
    if (!fn(v)) return;
    std::size_t pos = dim;
    while (pos > 0) {
      --pos;
      if (v[pos] < bound) {
        v[pos] += 1;
        for (std::size_t j = pos + 1; j < dim; ++j) v[j] = -bound;
        break;
      }
      if (pos == 0) return;
    }
  }
}

struct LevelScan {
  std::optional<RootOfUnityWitness> witness;
  bool all_positive_real = true;
};

inline LevelScan scan_level(const TowerSpec& t, std::size_t level, long bound) {
  LevelScan out;
  for_each_box_vector(t.base_rank(), bound, [&](const IntVec& v) {
    IntMat m = mu_apply(t, level, v);
    IntPoly p = char_poly(m);
    for (unsigned long d : cyclotomic_divisors(p)) {
      if (d > 1) {
        out.witness = RootOfUnityWitness{level, v, d};
        return false;
      }
    }
    if (out.all_positive_real && !all_roots_real_positive(p))
      out.all_positive_real = false;
    return true;
  });
  return out;
}

inline std::string exponent_str(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

inline NetnessVerdict analyze(const TowerSpec& t, long bound, bool nr_mode) {
  if (bound < 1)
    throw SemanticError("sweep box bound must be at least 1");
  NetnessVerdict verdict;
  verdict.box_bound = bound;
  for (std::size_t i = 1; i <= t.c(); ++i) {
    LevelVerdict lv;
    lv.level = i;
    bool unipotent = true;
    for (const IntMat& g : t.gens[i - 1])
      if (!is_unipotent(g)) unipotent = false;

    LevelScan scan = scan_level(t, i, bound);
    if (scan.witness) {
      lv.status = NetStatus::NotNr;
      lv.witness = scan.witness;
      lv.certificate = "exponent " + exponent_str(scan.witness->exponent) +
                       " acts with an eigenvalue of order " +
                       std::to_string(scan.witness->order);
    } else if (unipotent) {
      lv.status = NetStatus::Net;
      lv.certificate = "all generators unipotent";
    } else if (scan.all_positive_real) {
      lv.status = NetStatus::Net;
      lv.certificate =
          "every exponent in the box of radius " + std::to_string(bound) +
          " acts with all-real positive spectrum";
    } else if (nr_mode) {
      lv.status = NetStatus::NrOnly;
      lv.certificate =
          t.base_rank() == 1
              ? "no eigenvalue is a root of unity (exact for a rank-one "
                "exponent group)"
              : "no root-of-unity eigenvalue for any exponent in the box of "
                "radius " + std::to_string(bound);
    } else {
      lv.status = NetStatus::Unknown;
      lv.certificate = "no certificate applies within the box of radius " +
                       std::to_string(bound);
    }
    verdict.levels.push_back(std::move(lv));
  }
  return verdict;
}

}  // namespace detail

// Root-of-unity analysis: not-NR with a witness, otherwise the strongest
// statement the certificates support (never Unknown: absence of a witness
// in the box is itself the NR-only report, exact when the base rank is 1).
inline NetnessVerdict nr_check(const TowerSpec& t, long bound = 3) {
  return detail::analyze(t, bound, /*nr_mode=*/true);
}

// Netness analysis: Net only with a sound certificate, not-NR with a
// witness, Unknown otherwise (with the bound recorded).
inline NetnessVerdict netness_check(const TowerSpec& t, long bound = 3) {
  return detail::analyze(t, bound, /*nr_mode=*/false);
}

// Holonomy closure: for every pair of labels and every level, check that
// the product of action matrices differs from the action of the product
// label by the action of some exponent in the sweep box.  At level 0 the
// exponent action is trivial, so closure there means exact equality.
// Failure to find an exponent is reported, never fatal: the sweep box is
// finite while the true correction may lie outside it.
struct ClosureEntry {
  std::size_t level = 0;
  std::size_t q1 = 0, q2 = 0;  // label indices
  bool verified = false;
  IntVec exponent;             // valid when verified and level >= 1
};

struct ClosureReport {
  std::vector<ClosureEntry> entries;  // only one entry per (pair, level)
  long box_bound = 0;
  bool all_verified = true;
};

inline ClosureReport holonomy_closure_check(const InfraSpec& s, long bound = 3) {
  if (bound < 1)
    throw SemanticError("sweep box bound must be at least 1");
  ClosureReport report;
  report.box_bound = bound;
  const auto& h = s.holonomy;
  for (std::size_t q1 = 0; q1 < h.size(); ++q1)
    for (std::size_t q2 = 0; q2 < h.size(); ++q2) {
      const std::size_t q12 = h.mul(q1, q2);
      for (std::size_t i = 0; i < s.tower.levels(); ++i) {
        ClosureEntry e;
        e.level = i;
        e.q1 = q1;
        e.q2 = q2;
        const IntMat prod = h.action[q1][i] * h.action[q2][i];
        if (i == 0) {
          e.verified = (prod == h.action[q12][i]);
        } else {
          detail::for_each_box_vector(
              s.tower.base_rank(), bound, [&](const IntVec& v) {
                if (mu_apply(s.tower, i, v) * h.action[q12][i] == prod) {
                  e.verified = true;
                  e.exponent = v;
                  return false;
                }
                return true;
              });
        }
        if (!e.verified) report.all_verified = false;
        report.entries.push_back(std::move(e));
      }
    }
  return report;
}

}  // namespace nielsen
