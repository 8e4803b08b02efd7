#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace curvgraph {

using Rational = mpq_class;
using Integer = mpz_class;

/// n/d in canonical form; the two-argument mpq_class constructor does not
/// reduce, and unreduced values compare unequal to reduced ones.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Reduced "p/q" form, or just "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace curvgraph
