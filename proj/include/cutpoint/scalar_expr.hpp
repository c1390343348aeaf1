#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "cutpoint/enclosure.hpp"
#include "cutpoint/errors.hpp"
#include "cutpoint/quadratic.hpp"

namespace cutpoint {

inline constexpr int kLadderStartBits = 32;
inline constexpr int kDefaultMaxBits = 4096;

/// Digit k >= 1 of a binary fractional expansion. Must be pure.
using DigitGenerator = std::function<int(std::size_t)>;

enum class ExprKind { Exact, Pi, DigitStream, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Acos, Cos, Sin, Abs };

namespace detail {
struct ExprNode;
struct ExprAccess;
}

// Immutable scalar expression DAG. Subtrees whose operands are exact
// (rationals, or elements of one quadratic field) are folded at construction,
// so exact inputs stay exact through arbitrary arithmetic. Everything else
// is evaluated lazily to certified enclosures.
class Expr {
 public:
  Expr();  // exact zero
  Expr(int value);
  Expr(long value);
  Expr(const Rational& value);
  Expr(const Quadratic& value);

  static Expr pi();
  /// Real in [0, 1] given by its binary digits; the caller guarantees the
  /// expansion is not eventually all-ones.
  static Expr digit_stream(std::shared_ptr<const DigitGenerator> digits, std::string label);

  ExprKind kind() const;
  /// Rational or quadratic literal.
  bool is_exact() const { return kind() == ExprKind::Exact; }
  bool is_rational() const;
  /// Non-null iff is_exact().
  const Quadratic* exact_value() const;
  std::optional<Rational> rational_value() const;

  std::string to_string() const;

  const detail::ExprNode& node() const { return *node_; }

  Expr operator-() const;
  Expr& operator+=(const Expr& rhs);
  Expr& operator-=(const Expr& rhs);
  Expr& operator*=(const Expr& rhs);
  Expr& operator/=(const Expr& rhs);

  friend Expr operator+(const Expr& lhs, const Expr& rhs);
  friend Expr operator-(const Expr& lhs, const Expr& rhs);
  friend Expr operator*(const Expr& lhs, const Expr& rhs);
  /// Throws DivisionByZero for an exact zero divisor.
  friend Expr operator/(const Expr& lhs, const Expr& rhs);

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}
  friend struct detail::ExprAccess;

  std::shared_ptr<const detail::ExprNode> node_;
};

Expr sqrt(const Expr& arg);
Expr acos(const Expr& arg);
Expr cos(const Expr& arg);
Expr sin(const Expr& arg);
Expr abs(const Expr& arg);
Expr pow(const Expr& base, long exponent);

/// Certified enclosure of width <= 2^(1-precision_bits) * max(1, |value|).
/// Exact (zero-width) for rational values. Enclosures are nested: a larger
/// precision never yields an interval outside a smaller one.
/// Throws DomainError, DivisionByZero.
Enclosure eval(const Expr& expr, int precision_bits);

// Caches per-level enclosures of one expression so that repeated queries at
// rising precision reuse earlier work. Not thread-safe; use one per thread.
class Evaluator {
 public:
  explicit Evaluator(Expr expr) : expr_(std::move(expr)) {}
  Enclosure at(int precision_bits);
  const Expr& expr() const { return expr_; }

 private:
  const Enclosure& level(int bits);

  Expr expr_;
  std::map<int, Enclosure> raw_;
};

enum class Sign { Negative, Positive };
enum class Ordering { Less, Greater };

struct SignCertificate {
  Sign sign;
  Enclosure enclosure;  // excludes zero; precision_bits is the ladder level that decided
};

/// Doubles precision from 32 bits until the enclosure excludes zero.
/// Throws PrecisionExhausted when it still straddles zero at max_bits
/// (values_equal() is set if the expression is exactly zero).
SignCertificate certify_sign(const Expr& expr, int max_bits = kDefaultMaxBits);
Sign certified_sign(const Expr& expr, int max_bits = kDefaultMaxBits);
Ordering certified_compare(const Expr& lhs, const Expr& rhs, int max_bits = kDefaultMaxBits);

/// -1, 0 or +1. Zero only when lhs - rhs folds to an exact zero; a
/// non-exact tie throws PrecisionExhausted as certified_sign does.
int compare_values(const Expr& lhs, const Expr& rhs, int max_bits = kDefaultMaxBits);

inline int to_int(Sign s) { return s == Sign::Positive ? 1 : -1; }
std::string to_string(Sign s);
std::string to_string(Ordering o);

}  // namespace cutpoint
