#pragma once

// Exact scalar types used throughout: arbitrary precision integers and
// rationals on top of GMP.  Rationals are kept canonical (lowest terms,
// positive denominator), which makes equality a plain data comparison.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace nielsen {

using Int = mpz_class;
using Rat = mpq_class;

// Errors are split by category so the CLI can map them to distinct exit
// codes: syntax (malformed input text), semantic (well-formed text that
// violates a model invariant), computation (a theorem-backed postcondition
// failed on otherwise valid data).
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, int line = 0, int column = 0)
      : Error(format(msg, line, column)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + msg;
  }
  int line_;
  int column_;
};

class SemanticError : public Error {
public:
  using Error::Error;
};

class ComputationError : public Error {
public:
  using Error::Error;
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw SemanticError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw ComputationError("expected integer, got " + q.get_str());
  return q.get_num();
}

// Exact quotient; the caller promises divisibility (Bareiss pivots,
// cyclotomic trial division).  A remainder indicates a logic error.
inline Int exact_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw ComputationError("non-exact division");
  return q;
}

inline Rat exact_div(const Rat& a, const Rat& b) {
  if (b == 0) throw ComputationError("division by zero");
  return a / b;
}

inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rat& v) { return v.get_str(); }

}  // namespace nielsen
