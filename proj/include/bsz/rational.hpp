#ifndef BSZ_RATIONAL_HPP
#define BSZ_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "bsz/errors.hpp"

namespace bsz {

// Exact rationals. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using BigInt = mpz_class;
using BigRat = mpq_class;

// Parses "n", "-n" or "n/d". Non-reduced input is accepted and canonicalized.
inline BigRat parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  BigRat q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const BigRat& q) { return q.get_str(10); }

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

inline BigRat pow(const BigRat& base, unsigned exponent) {
  BigRat r(1);
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r(1);
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace bsz

#endif  // BSZ_RATIONAL_HPP
