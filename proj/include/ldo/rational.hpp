#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ldo {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q" or "p"; whitespace is not accepted.
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& q);

// lcm of denominators
Integer common_denominator(const std::vector<Rational>& v);

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace ldo
