#include "cutpoint/irrational_param.hpp"

#include "cutpoint/errors.hpp"

namespace cutpoint {

IrrationalParam IrrationalParam::rational(const Rational& value) {
  IrrationalParam p;
  p.tag_ = Tag::Rational;
  p.exact_ = Quadratic(value);
  p.value_ = Expr(value);
  return p;
}

IrrationalParam IrrationalParam::quadratic(const Quadratic& value) {
  if (value.is_rational()) return rational(value.rational_part());
  IrrationalParam p;
  p.tag_ = Tag::Quadratic;
  p.exact_ = value;
  p.value_ = Expr(value);
  return p;
}

IrrationalParam IrrationalParam::digit_stream(DigitGenerator digits, bool asserted_irrational, std::string label) {
  IrrationalParam p;
  p.tag_ = Tag::DigitStream;
  p.digits_ = std::make_shared<const DigitGenerator>(std::move(digits));
  p.asserted_irrational_ = asserted_irrational;
  p.label_ = std::move(label);
  p.value_ = Expr::digit_stream(p.digits_, p.label_);
  return p;
}

bool IrrationalParam::is_irrational() const {
  switch (tag_) {
    case Tag::Rational:
      return false;
    case Tag::Quadratic:
      return exact_.is_irrational();
    case Tag::DigitStream:
      return asserted_irrational_;
  }
  return false;
}

int IrrationalParam::digit(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("digits are indexed from 1");
  if (tag_ == Tag::DigitStream) return (*digits_)(k);
  return exact_.binary_digit(k);
}

std::string IrrationalParam::to_string() const { return tag_ == Tag::DigitStream ? label_ : exact_.to_string(); }

BinaryDigits binary_digits(const IrrationalParam& param, std::size_t n) {
  if (const Quadratic* q = param.exact()) {
    auto one = Quadratic(1);
    if (q->sign() <= 0 || subtract(*q, one)->sign() >= 0)
      throw RangeError("parameter " + q->to_string() + " is not in (0, 1)");
  }
  BinaryDigits out;
  out.bits.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.bits.push_back(param.digit(k));
  if (param.tag() == IrrationalParam::Tag::Rational) out.terminating = param.exact()->rational_part().is_dyadic();
  return out;
}

Rational digit_prefix_value(const std::vector<int>& bits) {
  Integer s = 0;
  for (int b : bits) {
    s <<= 1;
    s += b;
  }
  return Rational(s) * Rational::pow2(-static_cast<long>(bits.size()));
}

}  // namespace cutpoint
