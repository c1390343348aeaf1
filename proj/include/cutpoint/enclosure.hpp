#pragma once

#include <string>

#include "cutpoint/rational.hpp"

namespace cutpoint {

// Certified interval [lower, upper] containing a real value. Endpoints are
// dyadic for computed enclosures and equal to the value itself when the value
// is an exact rational.
struct Enclosure {
  Rational lower;
  Rational upper;
  int precision_bits = 0;

  static Enclosure exact(const Rational& value, int precision_bits = 0) {
    return Enclosure{value, value, precision_bits};
  }

  bool is_exact() const { return lower == upper; }
  Rational width() const { return upper - lower; }
  bool contains(const Rational& value) const { return lower <= value && value <= upper; }
  bool contains(const Enclosure& inner) const { return lower <= inner.lower && inner.upper <= upper; }
  bool overlaps(const Enclosure& other) const { return lower <= other.upper && other.lower <= upper; }
  /// +1 / -1 when the enclosure excludes zero, 0 when undecided.
  int sign() const { return lower.sign() > 0 ? 1 : (upper.sign() < 0 ? -1 : 0); }

  /// "p/q" when exact, otherwise "[lo, hi]@bits" with outward-rounded decimals.
  std::string to_string() const;
};

/// Both arguments must contain a common value; throws std::logic_error if disjoint.
Enclosure intersect(const Enclosure& a, const Enclosure& b);

enum class Rounding { Down, Up };

/// Decimal rendering of an exact rational with `significant_digits` digits,
/// rounded in the given direction. Uses plain notation for moderate
/// exponents and "1.25e-30" style otherwise.
std::string to_decimal(const Rational& value, int significant_digits, Rounding rounding);

}  // namespace cutpoint
