#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cutpoint/quadratic.hpp"
#include "cutpoint/scalar_expr.hpp"

namespace cutpoint {

// A real parameter in (0, 1) known exactly (rational or quadratic) or
// through a pure generator of its binary digits.
class IrrationalParam {
 public:
  enum class Tag { Rational, Quadratic, DigitStream };

  static IrrationalParam rational(const Rational& value);
  /// A quadratic with q == 0 is stored as a rational.
  static IrrationalParam quadratic(const Quadratic& value);
  /// `asserted_irrational` is the caller's claim that the expansion never terminates.
  static IrrationalParam digit_stream(DigitGenerator digits, bool asserted_irrational, std::string label);

  Tag tag() const { return tag_; }
  /// Certified for quadratics, asserted for digit streams, false for rationals.
  bool is_irrational() const;
  /// Digit k >= 1 of the binary expansion (for rationals, the terminating form).
  int digit(std::size_t k) const;
  Expr value() const { return value_; }
  const Quadratic* exact() const { return tag_ == Tag::DigitStream ? nullptr : &exact_; }
  /// Literal text for exact payloads, the label for digit streams.
  std::string to_string() const;

 private:
  IrrationalParam() = default;

  Tag tag_ = Tag::Rational;
  Quadratic exact_;
  std::shared_ptr<const DigitGenerator> digits_;
  bool asserted_irrational_ = false;
  std::string label_;
  Expr value_;
};

struct BinaryDigits {
  std::vector<int> bits;  // alpha_1 ... alpha_n
  bool terminating = false;
};

/// First n digits of a parameter in (0, 1). Throws RangeError for exact
/// parameters outside (0, 1).
BinaryDigits binary_digits(const IrrationalParam& param, std::size_t n);

/// Value of a digit prefix: sum_{k<=n} bits[k-1] * 2^-k.
Rational digit_prefix_value(const std::vector<int>& bits);

}  // namespace cutpoint
