#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace decomp {

// Exact rationals, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

// "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rational& r) {
  const Integer& num = boost::multiprecision::numerator(r);
  const Integer& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational sign_power(std::size_t n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace decomp
