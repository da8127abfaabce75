#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mvp {

/// Raised for malformed input: carrier mismatches, signature violations,
/// bad literals, unresolved names. The CLI maps it to exit code 2.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact rational, always kept in canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw input_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw input_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses `integer | integer "/" positive-integer`.
inline Rational parse_rational(std::string_view text) {
  static const std::regex grammar(R"(^\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, grammar)) {
    throw input_error("malformed rational literal '" + s + "'");
  }
  Integer num(m[1].str());
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (den == 0) throw input_error("zero denominator in '" + s + "'");
  return make_rational(num, den);
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rabs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// A rational constrained to [0,1]: scalars and standard-carrier values.
class UnitRational {
 public:
  UnitRational() = default;
  UnitRational(const Rational& value) : value_(value) {  // NOLINT: implicit by intent
    value_.canonicalize();
    if (!in_unit_interval(value_)) {
      throw input_error("value " + value_.get_str() + " outside [0,1]");
    }
  }
  UnitRational(long num, long den) : UnitRational(make_rational(num, den)) {}

  const Rational& value() const { return value_; }
  operator const Rational&() const { return value_; }  // NOLINT
  std::string str() const { return value_.get_str(); }

  friend bool operator==(const UnitRational& a, const UnitRational& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const UnitRational& a, const UnitRational& b) {
    return a.value_ < b.value_;
  }

 private:
  Rational value_{0};
};

using Rng = std::mt19937_64;

/// Uniform denominator in [1, max_den], then uniform numerator in [0, den].
inline Rational random_unit_rational(Rng& rng, long max_den = 32) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(0, den);
  return make_rational(num_dist(rng), den);
}

}  // namespace mvp
