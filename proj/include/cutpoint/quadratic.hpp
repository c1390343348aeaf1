#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cutpoint/rational.hpp"

namespace cutpoint {

// Element p + q*sqrt(d) of a real quadratic field, d a non-square positive
// integer whenever q != 0. Rationals are the q == 0 case (d stored as 0).
class Quadratic {
 public:
  Quadratic() = default;
  Quadratic(const Rational& value) : p_(value) {}
  Quadratic(int value) : p_(value) {}
  /// Normalizes: square factors of d are pulled into q; perfect squares fold into p.
  Quadratic(const Rational& p, const Rational& q, const Integer& d);

  /// sqrt of a nonnegative rational; throws DomainError for negative input.
  static Quadratic sqrt_of(const Rational& value);

  /// Parses literals built from decimals, rationals, + - * /, parentheses and
  /// sqrt(...) of rational subexpressions, e.g. "1/8 + 3/16*sqrt(2)" or "sqrt(2)/8".
  /// All square roots must share one radicand. Throws SyntaxError.
  static Quadratic parse(std::string_view text);

  const Rational& rational_part() const { return p_; }
  const Rational& sqrt_coefficient() const { return q_; }
  const Integer& radicand() const { return d_; }

  bool is_rational() const { return q_.is_zero(); }
  /// Certified irrational: q != 0 and d is not a perfect square (normal form).
  bool is_irrational() const { return !is_rational(); }

  int sign() const;
  Integer floor() const;
  /// Digit k >= 1 of the binary fractional expansion, i.e. floor(2^k v) mod 2.
  int binary_digit(std::size_t k) const;

  /// Canonical text: "p", "p + q*sqrt(d)", "q*sqrt(d)", "-sqrt(d)", ...
  std::string to_string() const;

  Quadratic operator-() const;

  friend bool operator==(const Quadratic& lhs, const Quadratic& rhs) {
    return lhs.p_ == rhs.p_ && lhs.q_ == rhs.q_ && lhs.d_ == rhs.d_;
  }

 private:
  friend std::optional<Quadratic> add(const Quadratic&, const Quadratic&);
  friend std::optional<Quadratic> multiply(const Quadratic&, const Quadratic&);
  friend std::optional<Quadratic> divide(const Quadratic&, const Quadratic&);

  // d already in normal form; only the q == 0 collapse is applied.
  static Quadratic normalized(Rational p, Rational q, const Integer& d);

  Rational p_;
  Rational q_;
  Integer d_ = 0;
};

/// Field operations; std::nullopt when the operands live in different fields.
std::optional<Quadratic> add(const Quadratic& lhs, const Quadratic& rhs);
std::optional<Quadratic> subtract(const Quadratic& lhs, const Quadratic& rhs);
std::optional<Quadratic> multiply(const Quadratic& lhs, const Quadratic& rhs);
/// Throws DivisionByZero when rhs == 0.
std::optional<Quadratic> divide(const Quadratic& lhs, const Quadratic& rhs);
Quadratic pow(const Quadratic& base, unsigned long exponent);

}  // namespace cutpoint
