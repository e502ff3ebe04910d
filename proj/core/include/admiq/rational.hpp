#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace admiq {

// All weights, costs and thresholds are exact rationals. cpp_rational keeps
// values in canonical form (reduced fraction, positive denominator), so
// operator== is structural equality.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "-12", "3.25", "7/2" (optionally signed). No exponents, no
// whitespace. Throws Error{ParseError} on anything else.
Rational parse_rational(std::string_view text);

// Canonical text form: integers as plain digits, terminating decimals as
// decimals ("0.125"), everything else as "num/den". parse_rational round-trips
// all three shapes.
std::string format_rational(const Rational& value);

inline Rational rational_abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }

// Totally ordered weights extended with -inf and +inf. Arithmetic is kept
// deliberately small: thresholds handle infinite cases explicitly, so only
// ordering, negation and formatting are needed.
class ExtendedWeight {
 public:
  ExtendedWeight() = default;
  ExtendedWeight(Rational value) : value_(std::move(value)) {}      // NOLINT: implicit by design
  ExtendedWeight(int value) : value_(value) {}                      // NOLINT

  static ExtendedWeight plus_infinity();
  static ExtendedWeight minus_infinity();

  bool is_finite() const { return sign_ == 0; }
  bool is_plus_infinity() const { return sign_ > 0; }
  bool is_minus_infinity() const { return sign_ < 0; }

  // Precondition: is_finite().
  const Rational& finite_value() const;

  ExtendedWeight operator-() const;

  friend bool operator==(const ExtendedWeight& a, const ExtendedWeight& b);
  friend bool operator!=(const ExtendedWeight& a, const ExtendedWeight& b) { return !(a == b); }
  friend bool operator<(const ExtendedWeight& a, const ExtendedWeight& b);
  friend bool operator>(const ExtendedWeight& a, const ExtendedWeight& b) { return b < a; }
  friend bool operator<=(const ExtendedWeight& a, const ExtendedWeight& b) { return !(b < a); }
  friend bool operator>=(const ExtendedWeight& a, const ExtendedWeight& b) { return !(a < b); }

 private:
  int sign_ = 0;  // -1 = -inf, 0 = finite, +1 = +inf
  Rational value_;
};

ExtendedWeight min(const ExtendedWeight& a, const ExtendedWeight& b);
ExtendedWeight max(const ExtendedWeight& a, const ExtendedWeight& b);

// "3", "0.125", "7/2", "+inf", "-inf".
std::string format_extended(const ExtendedWeight& value);
ExtendedWeight parse_extended(std::string_view text);

std::ostream& operator<<(std::ostream& os, const ExtendedWeight& value);

}  // namespace admiq
