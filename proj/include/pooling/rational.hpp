#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pooling {

// Numeric mode used throughout the solver. Exact mode works with
// arbitrary-precision rationals and is the default everywhere; Float mode
// runs the same algorithms in binary64 with tolerance kFloatTol and exists
// for benchmarking.
enum class Mode { Exact, Float };

inline constexpr double kFloatTol = 1e-9;

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Arbitrary-precision rational number, kept canonical at all times:
/// denominator > 0 and gcd(|numerator|, denominator) == 1. Backed by GMP.
///
/// Values are immutable in spirit: every operation returns a fresh value,
/// so instances are safe to share across threads once constructed.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);

  /// Parses a decimal or fraction literal: an optional sign followed by
  /// digits, an optional fractional part and an optional decimal exponent
  /// ("-3", "0.5", "2.5e-3"), or a fraction "p/q" with positive q ("7/21").
  /// The value is exact: "0.1" is one tenth. Throws ParseError otherwise.
  static Rational from_decimal(std::string_view text);

  /// Exact value of a finite binary64 number.
  static Rational from_double(double d);

  double to_double() const { return v_.get_d(); }

  /// Canonical text form: "n" when the denominator is 1, else "n/d".
  /// from_decimal(str()) round-trips exactly.
  std::string str() const { return v_.get_str(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  const mpq_class& raw() const { return v_; }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}

  mpq_class v_;
};

inline Rational Rational::from_double(double d) {
  if (d != d || d - d != 0.0) {
    throw std::domain_error("cannot convert non-finite double to Rational");
  }
  mpq_class q(d);  // exact: binary64 values are dyadic rationals
  return Rational(std::move(q));
}

}  // namespace pooling
