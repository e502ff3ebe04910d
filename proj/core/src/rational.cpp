#include "admiq/rational.hpp"

#include <cctype>
#include <ostream>

#include "admiq/errors.hpp"

namespace admiq {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int's string constructor treats a leading 0 as an octal prefix; digit
// runs like "09375" must be stripped before conversion.
BigInt from_digits(std::string_view digits) {
  std::size_t first = 0;
  while (first + 1 < digits.size() && digits[first] == '0') ++first;
  return BigInt(std::string(digits.substr(first)));
}

[[noreturn]] void bad_rational(std::string_view text) {
  fail(ErrorCode::ParseError, "malformed rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  if (rest.empty()) bad_rational(text);

  Rational value;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    std::string_view num = rest.substr(0, slash);
    std::string_view den = rest.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_rational(text);
    BigInt d = from_digits(den);
    if (d == 0) bad_rational(text);
    value = Rational(from_digits(num), d);
  } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view whole = rest.substr(0, dot);
    std::string_view frac = rest.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad_rational(text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt numerator = from_digits(whole) * scale + from_digits(frac);
    value = Rational(numerator, scale);
  } else {
    if (!all_digits(rest)) bad_rational(text);
    value = Rational(from_digits(rest));
  }
  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rational& value) {
  BigInt num = numerator(value);
  BigInt den = denominator(value);
  if (den == 1) return num.str();

  // Exact decimal when the denominator is 2^a * 5^b, "num/den" otherwise.
  BigInt reduced = den;
  int twos = 0;
  int fives = 0;
  while (reduced % 2 == 0) {
    reduced /= 2;
    ++twos;
  }
  while (reduced % 5 == 0) {
    reduced /= 5;
    ++fives;
  }
  if (reduced != 1) return num.str() + "/" + den.str();

  int digits = twos > fives ? twos : fives;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = num * scale / den;  // exact by construction
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.str();
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, digits + 1 - body.size(), '0');
  }
  body.insert(body.size() - digits, ".");
  while (body.back() == '0') body.pop_back();  // canonical: no trailing zeros
  return (negative ? "-" : "") + body;
}

ExtendedWeight ExtendedWeight::plus_infinity() {
  ExtendedWeight w;
  w.sign_ = 1;
  return w;
}

ExtendedWeight ExtendedWeight::minus_infinity() {
  ExtendedWeight w;
  w.sign_ = -1;
  return w;
}

const Rational& ExtendedWeight::finite_value() const {
  if (sign_ != 0) {
    fail(ErrorCode::OracleFailure, "finite_value() on an infinite weight");
  }
  return value_;
}

ExtendedWeight ExtendedWeight::operator-() const {
  if (sign_ > 0) return minus_infinity();
  if (sign_ < 0) return plus_infinity();
  return ExtendedWeight(Rational(-value_));
}

bool operator==(const ExtendedWeight& a, const ExtendedWeight& b) {
  if (a.sign_ != b.sign_) return false;
  if (a.sign_ != 0) return true;
  return a.value_ == b.value_;
}

bool operator<(const ExtendedWeight& a, const ExtendedWeight& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ != 0) return false;
  return a.value_ < b.value_;
}

ExtendedWeight min(const ExtendedWeight& a, const ExtendedWeight& b) {
  return b < a ? b : a;
}

ExtendedWeight max(const ExtendedWeight& a, const ExtendedWeight& b) {
  return a < b ? b : a;
}

std::string format_extended(const ExtendedWeight& value) {
  if (value.is_plus_infinity()) return "+inf";
  if (value.is_minus_infinity()) return "-inf";
  return format_rational(value.finite_value());
}

ExtendedWeight parse_extended(std::string_view text) {
  if (text == "+inf" || text == "inf") return ExtendedWeight::plus_infinity();
  if (text == "-inf") return ExtendedWeight::minus_infinity();
  return ExtendedWeight(parse_rational(text));
}

std::ostream& operator<<(std::ostream& os, const ExtendedWeight& value) {
  return os << format_extended(value);
}

}  // namespace admiq
