#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pivotlab/error.hpp"

namespace pivotlab {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

/// Number of binary digits of |z|; zero has bit length 0.
inline std::size_t bit_length(const Integer& z) {
  if (z == 0) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(abs(z))) + 1;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
  // The two-integer constructor canonicalizes (gcd and sign); string
  // construction through mpq_set_str would not.
  return Rational(num, den);
}

/// Parses "p/q", "p" or "-p/q" (decimal integers, optional leading sign).
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    for (std::size_t k = i; k < part.size(); ++k) {
      if (part[k] < '0' || part[k] > '9')
        throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
    }
    std::string digits(part.substr(part[0] == '+' ? 1 : 0));
    return Integer(digits);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

/// Always "p/q" (q >= 1), so every emitted value parses back exactly.
inline std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Natural logarithm of a positive integer, safe for values beyond double range.
inline double log_integer(const Integer& z) {
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, z.backend().data());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

inline double log_rational(const Rational& q) {
  return log_integer(numerator(q)) - log_integer(denominator(q));
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Decimal convenience rendering; never used for anything that is parsed back.
inline std::string to_decimal(const Rational& q, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double(q));
  return buf;
}

}  // namespace pivotlab
