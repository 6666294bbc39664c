#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qmodular {

// GMP rationals are always kept canonical (reduced, positive denominator),
// which is exactly the invariant the series coefficients need.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Floor division for signed longs (C++ `/` truncates toward zero).
inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

// "p/q" or "p"; throws Error(SyntaxError) on malformed input.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

// Smallest integer >= r / largest integer <= r.
long ceil_long(const Rational& r);
long floor_long(const Rational& r);

}  // namespace qmodular
