#include "cutpoint/enclosure.hpp"

#include <algorithm>
#include <stdexcept>

namespace cutpoint {

namespace {

Integer pow10(long n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return r;
}

// floor(log10(|v|)) for v != 0.
long decimal_exponent(const Rational& v) {
  Rational a = abs(v);
  if (a >= Rational(1)) return static_cast<long>(a.floor().get_str().size()) - 1;
  long e = 0;
  Rational x = a;
  while (x < Rational(1)) {
    x *= Rational(10);
    --e;
  }
  return e;
}

}  // namespace

std::string to_decimal(const Rational& value, int significant_digits, Rounding rounding) {
  if (value.is_zero()) return "0";
  significant_digits = std::max(significant_digits, 1);
  const long e = decimal_exponent(value);
  const long shift = significant_digits - 1 - e;
  Rational scaled = shift >= 0 ? value * Rational(pow10(shift)) : value / Rational(pow10(-shift));
  Integer n = rounding == Rounding::Down ? scaled.floor() : scaled.ceil();
  const bool negative = n < 0;
  std::string digits = (negative ? Integer(-n) : n).get_str();
  long exponent = static_cast<long>(digits.size()) - 1 - shift;  // exponent of leading digit

  std::string out;
  if (exponent >= -7 && exponent < 21) {
    // Plain notation: value = digits * 10^-shift
    if (shift <= 0) {
      out = digits + std::string(static_cast<std::size_t>(-shift), '0');
    } else if (static_cast<long>(digits.size()) > shift) {
      out = digits.substr(0, digits.size() - shift) + "." + digits.substr(digits.size() - shift);
    } else {
      out = "0." + std::string(static_cast<std::size_t>(shift - static_cast<long>(digits.size())), '0') + digits;
    }
    if (out.find('.') != std::string::npos) {
      while (out.back() == '0') out.pop_back();
      if (out.back() == '.') out.pop_back();
    }
  } else {
    std::string mantissa = digits.substr(0, 1);
    std::string rest = digits.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) mantissa += "." + rest;
    out = mantissa + "e" + std::to_string(exponent);
  }
  return negative ? "-" + out : out;
}

std::string Enclosure::to_string() const {
  if (is_exact()) return lower.to_string();
  // Enough digits to show the width, bounded for readability.
  int digits = 12;
  Rational w = width();
  Rational mag = std::max(abs(lower), abs(upper));
  if (!w.is_zero() && !mag.is_zero()) {
    long gap = decimal_exponent(mag) - decimal_exponent(w);
    digits = static_cast<int>(std::clamp<long>(gap + 3, 12, 40));
  }
  return "[" + to_decimal(lower, digits, Rounding::Down) + ", " + to_decimal(upper, digits, Rounding::Up) + "]@" +
         std::to_string(precision_bits);
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
  Enclosure r{std::max(a.lower, b.lower), std::min(a.upper, b.upper), std::max(a.precision_bits, b.precision_bits)};
  if (r.upper < r.lower) throw std::logic_error("disjoint enclosures of the same value");
  return r;
}

}  // namespace cutpoint
