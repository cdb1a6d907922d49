#pragma once

// Integer polynomials: characteristic polynomials (Faddeev-LeVerrier, all
// divisions exact), cyclotomic polynomials by the classic recurrence, and
// the divisor scan used to witness root-of-unity eigenvalues.

#include <cstddef>
#include <map>
#include <vector>

#include "nielsen/matrix.hpp"
#include "nielsen/numeric.hpp"

namespace nielsen {

// Coefficients lowest degree first; the top coefficient is nonzero except
// for the zero polynomial, which is the empty vector.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  static IntPoly constant(const Int& v) { return IntPoly({v}); }
  static IntPoly x_power(std::size_t n) {
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;
    return IntPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Int& coeff(std::size_t i) const {
    static const Int zero(0);
    return i < c_.size() ? c_[i] : zero;
  }
  const Int& leading() const { return c_.back(); }
  const std::vector<Int>& coeffs() const { return c_; }

  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return !(*this == o); }

  IntPoly operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return IntPoly(std::move(r));
  }
  IntPoly operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return IntPoly(std::move(r));
  }
  IntPoly operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(i);
    return IntPoly(std::move(r));
  }

  Int eval(const Int& x) const {
    Int r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
      else if (c_[i] < 0) s += "-";
      const Int a = abs(c_[i]);
      if (a != 1 || i == 0) s += to_string(a);
      if (i >= 1) s += a == 1 ? "x" : "*x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

// Division by a monic divisor stays inside Z[x].
struct IntDivMod {
  IntPoly quotient;
  IntPoly remainder;
};

inline IntDivMod divmod_monic(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero() || b.leading() != 1)
    throw ComputationError("divmod_monic requires a monic divisor");
  std::vector<Int> rem(a.coeffs());
  const int db = b.degree();
  if (a.degree() < db) return {IntPoly(), a};
  std::vector<Int> quo(a.degree() - db + 1, Int(0));
  for (int i = a.degree(); i >= db; --i) {
    const Int f = rem[i];
    if (f == 0) continue;
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
  }
  return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

inline bool divides_monic(const IntPoly& b, const IntPoly& a) {
  return divmod_monic(a, b).remainder.is_zero();
}

// Characteristic polynomial det(x I - A), monic of degree n.  The k-th
// trace division in Faddeev-LeVerrier is exact because the result is the
// integer coefficient itself.
inline IntPoly char_poly(const IntMat& a) {
  if (!a.is_square()) throw SemanticError("char_poly of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Int> c(n + 1, Int(0));
  c[n] = 1;
  IntMat m = IntMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const IntMat x = a * m;
    Int tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += x(i, i);
    c[n - k] = exact_div(-tr, Int(k));
    m = x;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k];
  }
  return IntPoly(std::move(c));
}

inline unsigned long euler_phi(unsigned long d) {
  unsigned long result = d;
  for (unsigned long p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    while (d % p == 0) d /= p;
    result -= result / p;
  }
  if (d > 1) result -= result / d;
  return result;
}

// Phi_d via Phi_d(x) = (x^d - 1) / prod_{e | d, e < d} Phi_e(x).  The box
// sweeps ask for the same small orders over and over, so results are
// memoised per thread.
inline IntPoly cyclotomic(unsigned long d) {
  thread_local std::map<unsigned long, IntPoly> cache;
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  IntPoly num = IntPoly::x_power(d) - IntPoly::constant(Int(1));
  for (unsigned long e = 1; e < d; ++e) {
    if (d % e) continue;
    const IntDivMod dm = divmod_monic(num, cyclotomic(e));
    if (!dm.remainder.is_zero())
      throw ComputationError("cyclotomic recurrence produced a remainder");
    num = dm.quotient;
  }
  cache.emplace(d, num);
  return num;
}

// All d >= 1 with Phi_d | p.  Because phi(d) >= sqrt(d/2), any d whose
// cyclotomic factor fits into deg p satisfies d <= 2 deg(p)^2, so the scan
// below is exhaustive, not heuristic.
inline std::vector<unsigned long> cyclotomic_divisors(const IntPoly& p) {
  std::vector<unsigned long> result;
  if (p.is_zero() || p.degree() == 0) return result;
  const unsigned long deg = static_cast<unsigned long>(p.degree());
  for (unsigned long d = 1; d <= 2 * deg * deg; ++d) {
    if (euler_phi(d) > deg) continue;
    if (divides_monic(cyclotomic(d), p)) result.push_back(d);
  }
  return result;
}

inline bool is_unipotent(const IntMat& m) {
  if (!m.is_square()) return false;
  IntMat n = m - IntMat::identity(m.rows());
  IntMat p = n;
  for (std::size_t i = 1; i < m.rows(); ++i) p = p * n;
  return p.is_zero();
}

}  // namespace nielsen
