#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cutpoint {

using Integer = mpz_class;

// Exact rational number. Thin value wrapper over mpq_class that keeps GMP's
// expression templates out of generic code (Eigen kernels in particular).
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}
  Rational(long value) : value_(value) {}
  Rational(long long value) : value_(static_cast<long>(value)) {}
  Rational(const Integer& value) : value_(value) {}
  Rational(long numerator, long denominator);
  Rational(const Integer& numerator, const Integer& denominator);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  /// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.51" (read exactly).
  static Rational parse(std::string_view text);

  /// 2^exponent, exponent may be negative.
  static Rational pow2(long exponent);

  const mpq_class& get() const { return value_; }
  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  /// True iff the denominator is a power of two.
  bool is_dyadic() const;

  Integer floor() const;
  Integer ceil() const;
  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" for integers.
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& value);
Rational pow(const Rational& base, long exponent);

/// Exact square root when `value` is the square of a rational.
bool exact_sqrt(const Rational& value, Rational& root);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace cutpoint
