#include "cutpoint/quadratic.hpp"

#include <cctype>

#include "cutpoint/errors.hpp"

namespace cutpoint {

namespace {

bool compatible(const Quadratic& a, const Quadratic& b) {
  return a.is_rational() || b.is_rational() || a.radicand() == b.radicand();
}

Integer common_radicand(const Quadratic& a, const Quadratic& b) {
  return a.is_rational() ? b.radicand() : a.radicand();
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

Quadratic::Quadratic(const Rational& p, const Rational& q, const Integer& d) : p_(p), q_(q), d_(d) {
  if (d_ < 0) throw DomainError("negative radicand " + d_.get_str());
  if (q_.is_zero() || d_ == 0) {
    q_ = 0;
    d_ = 0;
    return;
  }
  // Pull small square factors out of the radicand. Trial division keeps the
  // common cases (sqrt(8), sqrt(12)) canonical; large square factors that
  // survive are still handled correctly by the perfect-square test below.
  for (unsigned long k = 2; k <= 10000; ++k) {
    Integer k2 = Integer(k) * k;
    if (k2 > d_) break;
    while (mpz_divisible_p(d_.get_mpz_t(), k2.get_mpz_t())) {
      d_ /= k2;
      q_ *= Rational(static_cast<long>(k));
    }
  }
  if (mpz_perfect_square_p(d_.get_mpz_t())) {
    p_ += q_ * Rational(isqrt(d_));
    q_ = 0;
    d_ = 0;
  }
}

Quadratic Quadratic::normalized(Rational p, Rational q, const Integer& d) {
  Quadratic r;
  r.p_ = std::move(p);
  if (!q.is_zero() && d != 0) {
    r.q_ = std::move(q);
    r.d_ = d;
  }
  return r;
}

Quadratic Quadratic::sqrt_of(const Rational& value) {
  if (value.sign() < 0) throw DomainError("sqrt of negative rational " + value.to_string());
  // sqrt(a/b) = sqrt(a*b)/b
  const Integer& a = value.get().get_num();
  const Integer& b = value.get().get_den();
  return Quadratic(Rational(0), Rational(Integer(1), b), a * b);
}

int Quadratic::sign() const {
  if (is_rational()) return p_.sign();
  const int sp = p_.sign(), sq = q_.sign();
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with q^2 d (never equal, d non-square).
  Rational lhs = p_ * p_, rhs = q_ * q_ * Rational(d_);
  return lhs > rhs ? sp : sq;
}

Integer Quadratic::floor() const {
  if (is_rational()) return p_.floor();
  const Integer a = p_.numerator(), b = p_.denominator();
  const Integer c = q_.numerator(), e = q_.denominator();
  const Integer n = a * e, m = c * b, den = b * e;
  // s = floor(m*sqrt(d)); m*sqrt(d) is irrational so never an integer.
  Integer s = isqrt(Integer(m * m * d_));
  if (m < 0) s = -s - 1;
  Integer num = n + s, q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

int Quadratic::binary_digit(std::size_t k) const {
  const Rational scale = Rational::pow2(static_cast<long>(k));
  Quadratic scaled = normalized(p_ * scale, q_ * scale, d_);
  Integer f = scaled.floor();
  return mpz_odd_p(f.get_mpz_t()) ? 1 : 0;
}

std::string Quadratic::to_string() const {
  if (is_rational()) return p_.to_string();
  std::string surd = "sqrt(" + d_.get_str() + ")";
  Rational mag = abs(q_);
  std::string term = mag == Rational(1) ? surd : mag.to_string() + "*" + surd;
  if (p_.is_zero()) return (q_.sign() < 0 ? "-" : "") + term;
  return p_.to_string() + (q_.sign() < 0 ? " - " : " + ") + term;
}

Quadratic Quadratic::operator-() const {
  Quadratic r = *this;
  r.p_ = -r.p_;
  r.q_ = -r.q_;
  return r;
}

std::optional<Quadratic> add(const Quadratic& lhs, const Quadratic& rhs) {
  if (!compatible(lhs, rhs)) return std::nullopt;
  if (lhs.is_rational() && rhs.is_rational()) return Quadratic(lhs.p_ + rhs.p_);
  return Quadratic::normalized(lhs.p_ + rhs.p_, lhs.q_ + rhs.q_, common_radicand(lhs, rhs));
}

std::optional<Quadratic> subtract(const Quadratic& lhs, const Quadratic& rhs) { return add(lhs, -rhs); }

std::optional<Quadratic> multiply(const Quadratic& lhs, const Quadratic& rhs) {
  if (!compatible(lhs, rhs)) return std::nullopt;
  const Integer d = common_radicand(lhs, rhs);
  const Rational &p1 = lhs.rational_part(), &q1 = lhs.sqrt_coefficient();
  const Rational &p2 = rhs.rational_part(), &q2 = rhs.sqrt_coefficient();
  if (lhs.is_rational() && rhs.is_rational()) return Quadratic(p1 * p2);
  return Quadratic::normalized(p1 * p2 + q1 * q2 * Rational(d), p1 * q2 + p2 * q1, d);
}

std::optional<Quadratic> divide(const Quadratic& lhs, const Quadratic& rhs) {
  if (rhs.sign() == 0) throw DivisionByZero("division by exact zero");
  if (!compatible(lhs, rhs)) return std::nullopt;
  if (lhs.is_rational() && rhs.is_rational()) return Quadratic(lhs.p_ / rhs.p_);
  const Integer d = common_radicand(lhs, rhs);
  const Rational &p2 = rhs.rational_part(), &q2 = rhs.sqrt_coefficient();
  const Rational norm = p2 * p2 - q2 * q2 * Rational(d);
  Quadratic conj = Quadratic::normalized(p2, -q2, d);
  auto num = multiply(lhs, conj);
  return Quadratic::normalized(num->p_ / norm, num->q_ / norm, d);
}

Quadratic pow(const Quadratic& base, unsigned long exponent) {
  Quadratic result(1), b = base;
  while (exponent > 0) {
    if (exponent & 1UL) result = *multiply(result, b);
    exponent >>= 1;
    if (exponent > 0) b = *multiply(b, b);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Literal parser

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  Quadratic parse() {
    Quadratic v = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, 1, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Quadratic checked(std::optional<Quadratic> v) const {
    if (!v) fail("square roots with different radicands cannot be combined");
    return *v;
  }

  Quadratic expression() {
    Quadratic v = term();
    for (;;) {
      if (accept('+'))
        v = checked(add(v, term()));
      else if (accept('-'))
        v = checked(subtract(v, term()));
      else
        return v;
    }
  }

  Quadratic term() {
    Quadratic v = factor();
    for (;;) {
      if (accept('*')) {
        v = checked(multiply(v, factor()));
      } else if (accept('/')) {
        std::size_t at = pos_;
        Quadratic rhs = factor();
        if (rhs.sign() == 0) {
          pos_ = at;
          fail("division by zero");
        }
        v = checked(divide(v, rhs));
      } else {
        return v;
      }
    }
  }

  Quadratic factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    if (accept('(')) {
      Quadratic v = expression();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    skip_space();
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      std::size_t at = pos_;
      Quadratic arg = expression();
      if (!accept(')')) fail("expected ')'");
      if (!arg.is_rational()) {
        pos_ = at;
        fail("sqrt argument must be rational");
      }
      if (arg.sign() < 0) {
        pos_ = at;
        fail("sqrt of a negative number");
      }
      return Quadratic::sqrt_of(arg.rational_part());
    }
    return number();
  }

  Quadratic number() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                : "unexpected end of input");
    try {
      return Quadratic(Rational::parse(text_.substr(start, pos_ - start)));
    } catch (const std::invalid_argument&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Quadratic Quadratic::parse(std::string_view text) { return LiteralParser(text).parse(); }

}  // namespace cutpoint
