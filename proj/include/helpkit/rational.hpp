#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace helpkit {

// Exact arbitrary-precision arithmetic. cpp_rational keeps every value in
// lowest terms with a positive denominator, which is the canonical form all
// serialization relies on.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Integer to_integer(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.str());
  return numerator(r);
}

// "p/q" for proper fractions, plain decimal otherwise.
inline std::string rational_to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text);

// Floor/ceil of a/b for exact bound tightening.
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

inline Integer floor_rational(const Rational& r) { return floor_div(numerator(r), denominator(r)); }
inline Integer ceil_rational(const Rational& r) { return ceil_div(numerator(r), denominator(r)); }

}  // namespace helpkit
