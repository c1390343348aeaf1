#include "interval.hpp"

#include <algorithm>

#include "cutpoint/errors.hpp"

namespace cutpoint::detail {

namespace {

// min/max over candidate endpoint values, each already rounded in the
// direction that makes it a valid bound.
void set_min(mpfr_ptr dst, mpfr_srcptr candidate) {
  if (mpfr_less_p(candidate, dst)) mpfr_set(dst, candidate, MPFR_RNDD);
}
void set_max(mpfr_ptr dst, mpfr_srcptr candidate) {
  if (mpfr_greater_p(candidate, dst)) mpfr_set(dst, candidate, MPFR_RNDU);
}

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Hull of op over the four endpoint combinations.
void corner_hull(Interval& out, const Interval& a, const Interval& b, BinaryOp op, mpfr_prec_t prec) {
  mpfr_srcptr as[2] = {a.lo.get(), a.hi.get()};
  mpfr_srcptr bs[2] = {b.lo.get(), b.hi.get()};
  BigFloat t(prec);
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      if (first) {
        op(out.lo.get(), x, y, MPFR_RNDD);
        op(out.hi.get(), x, y, MPFR_RNDU);
        first = false;
        continue;
      }
      op(t.get(), x, y, MPFR_RNDD);
      set_min(out.lo.get(), t.get());
      op(t.get(), x, y, MPFR_RNDU);
      set_max(out.hi.get(), t.get());
    }
  }
}

}  // namespace

IntervalEvaluator::IntervalEvaluator(mpfr_prec_t precision) : precision_(precision), pi_(precision) {
  mpfr_const_pi(pi_.lo.get(), MPFR_RNDD);
  mpfr_const_pi(pi_.hi.get(), MPFR_RNDU);
}

const Interval& IntervalEvaluator::eval(const ExprNode& node) {
  if (auto it = memo_.find(&node); it != memo_.end()) return it->second;
  Interval value = compute(node);
  return memo_.emplace(&node, std::move(value)).first->second;
}

Interval IntervalEvaluator::compute(const ExprNode& node) {
  switch (node.kind) {
    case ExprKind::Exact:
      return exact(node.exact);
    case ExprKind::Pi:
      return pi_;
    case ExprKind::DigitStream:
      return digit_stream(node);
    case ExprKind::Add:
      return add(eval(*node.lhs), eval(*node.rhs));
    case ExprKind::Sub:
      return sub(eval(*node.lhs), eval(*node.rhs));
    case ExprKind::Mul:
      return mul(eval(*node.lhs), eval(*node.rhs));
    case ExprKind::Div:
      return div(eval(*node.lhs), eval(*node.rhs));
    case ExprKind::Neg:
      return neg(eval(*node.lhs));
    case ExprKind::Pow:
      return power(eval(*node.lhs), node.exponent);
    case ExprKind::Sqrt:
      return sqrt(eval(*node.lhs));
    case ExprKind::Acos:
      return acos(eval(*node.lhs));
    case ExprKind::Cos:
      return trig(eval(*node.lhs), false);
    case ExprKind::Sin:
      return trig(eval(*node.lhs), true);
    case ExprKind::Abs:
      return abs(eval(*node.lhs));
  }
  throw std::logic_error("unknown expression kind");
}

Interval IntervalEvaluator::exact(const Quadratic& value) const {
  Interval r = fresh();
  const mpq_class& p = value.rational_part().get();
  if (value.is_rational()) {
    mpfr_set_q(r.lo.get(), p.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.get(), p.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  const mpq_class& q = value.sqrt_coefficient().get();
  BigFloat root_lo(precision_), root_hi(precision_);
  mpfr_set_z(root_lo.get(), value.radicand().get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(root_hi.get(), value.radicand().get_mpz_t(), MPFR_RNDU);
  mpfr_sqrt(root_lo.get(), root_lo.get(), MPFR_RNDD);
  mpfr_sqrt(root_hi.get(), root_hi.get(), MPFR_RNDU);
  if (sgn(q) > 0) {
    mpfr_mul_q(r.lo.get(), root_lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi.get(), root_hi.get(), q.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(r.lo.get(), root_hi.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi.get(), root_lo.get(), q.get_mpq_t(), MPFR_RNDU);
  }
  mpfr_add_q(r.lo.get(), r.lo.get(), p.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(r.hi.get(), r.hi.get(), p.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval IntervalEvaluator::digit_stream(const ExprNode& node) const {
  // n digits pin the value to [s, s + 2^-n] with s the truncated expansion.
  const std::size_t n = static_cast<std::size_t>(precision_) + 2;
  Integer s = 0;
  const DigitGenerator& digit = *node.digits;
  for (std::size_t k = 1; k <= n; ++k) {
    s <<= 1;
    int d = digit(k);
    if (d != 0 && d != 1) throw std::logic_error("digit stream produced a non-binary digit");
    s += d;
  }
  Interval r = fresh();
  const long e = -static_cast<long>(n);
  mpfr_set_z_2exp(r.lo.get(), s.get_mpz_t(), e, MPFR_RNDD);
  Integer s1 = s + 1;
  mpfr_set_z_2exp(r.hi.get(), s1.get_mpz_t(), e, MPFR_RNDU);
  return r;
}

Interval IntervalEvaluator::add(const Interval& a, const Interval& b) const {
  Interval r = fresh();
  mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return r;
}

Interval IntervalEvaluator::sub(const Interval& a, const Interval& b) const {
  Interval r = fresh();
  mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return r;
}

Interval IntervalEvaluator::mul(const Interval& a, const Interval& b) const {
  Interval r = fresh();
  corner_hull(r, a, b, mpfr_mul, precision_);
  return r;
}

Interval IntervalEvaluator::div(const Interval& a, const Interval& b) const {
  if (mpfr_sgn(b.lo.get()) <= 0 && mpfr_sgn(b.hi.get()) >= 0) throw NeedsPrecision{Ambiguity::Division};
  Interval r = fresh();
  corner_hull(r, a, b, mpfr_div, precision_);
  return r;
}

Interval IntervalEvaluator::neg(const Interval& a) const {
  Interval r = fresh();
  mpfr_neg(r.lo.get(), a.hi.get(), MPFR_RNDD);
  mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
  return r;
}

Interval IntervalEvaluator::power(const Interval& a, long n) const {
  Interval r = fresh();
  const unsigned long e = static_cast<unsigned long>(n);
  if (n == 0) {
    mpfr_set_ui(r.lo.get(), 1, MPFR_RNDD);
    mpfr_set_ui(r.hi.get(), 1, MPFR_RNDU);
    return r;
  }
  if (n % 2 == 1 || mpfr_sgn(a.lo.get()) >= 0) {
    mpfr_pow_ui(r.lo.get(), a.lo.get(), e, MPFR_RNDD);
    mpfr_pow_ui(r.hi.get(), a.hi.get(), e, MPFR_RNDU);
  } else if (mpfr_sgn(a.hi.get()) <= 0) {
    mpfr_pow_ui(r.lo.get(), a.hi.get(), e, MPFR_RNDD);
    mpfr_pow_ui(r.hi.get(), a.lo.get(), e, MPFR_RNDU);
  } else {
    BigFloat t(precision_);
    mpfr_set_zero(r.lo.get(), 1);
    mpfr_pow_ui(r.hi.get(), a.lo.get(), e, MPFR_RNDU);
    mpfr_pow_ui(t.get(), a.hi.get(), e, MPFR_RNDU);
    set_max(r.hi.get(), t.get());
  }
  return r;
}

Interval IntervalEvaluator::sqrt(const Interval& a) const {
  if (mpfr_sgn(a.hi.get()) < 0) throw DomainError("sqrt of a negative value");
  if (mpfr_sgn(a.lo.get()) < 0) throw NeedsPrecision{Ambiguity::Domain};
  Interval r = fresh();
  mpfr_sqrt(r.lo.get(), a.lo.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi.get(), a.hi.get(), MPFR_RNDU);
  return r;
}

Interval IntervalEvaluator::acos(const Interval& a) const {
  if (mpfr_cmp_si(a.hi.get(), -1) < 0 || mpfr_cmp_si(a.lo.get(), 1) > 0)
    throw DomainError("arccos argument outside [-1, 1]");
  if (mpfr_cmp_si(a.lo.get(), -1) < 0 || mpfr_cmp_si(a.hi.get(), 1) > 0) throw NeedsPrecision{Ambiguity::Domain};
  // arccos is decreasing
  Interval r = fresh();
  mpfr_acos(r.lo.get(), a.hi.get(), MPFR_RNDD);
  mpfr_acos(r.hi.get(), a.lo.get(), MPFR_RNDU);
  return r;
}

Interval IntervalEvaluator::abs(const Interval& a) const {
  if (mpfr_sgn(a.lo.get()) >= 0) return a;
  if (mpfr_sgn(a.hi.get()) <= 0) return neg(a);
  Interval r = fresh();
  mpfr_set_zero(r.lo.get(), 1);
  mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
  set_max(r.hi.get(), a.hi.get());
  return r;
}

Interval IntervalEvaluator::trig(const Interval& a, bool sine) const {
  Interval r = fresh();
  mpfr_set_si(r.lo.get(), -1, MPFR_RNDD);
  mpfr_set_si(r.hi.get(), 1, MPFR_RNDU);

  BigFloat width(precision_);
  mpfr_sub(width.get(), a.hi.get(), a.lo.get(), MPFR_RNDU);
  if (mpfr_cmp_si(width.get(), 6) >= 0) return r;

  // Extrema sit at offset + j*pi with value (-1)^j; offset is 0 for cos and
  // pi/2 for sin. Bound the range of j that can fall inside [lo, hi].
  Interval offset = fresh();
  if (sine) {
    mpfr_div_2ui(offset.lo.get(), pi_.lo.get(), 1, MPFR_RNDD);
    mpfr_div_2ui(offset.hi.get(), pi_.hi.get(), 1, MPFR_RNDU);
  } else {
    mpfr_set_zero(offset.lo.get(), 1);
    mpfr_set_zero(offset.hi.get(), 1);
  }
  BigFloat t_lo(precision_), t_hi(precision_);
  mpfr_sub(t_lo.get(), a.lo.get(), offset.hi.get(), MPFR_RNDD);
  mpfr_div(t_lo.get(), t_lo.get(), mpfr_sgn(t_lo.get()) >= 0 ? pi_.hi.get() : pi_.lo.get(), MPFR_RNDD);
  mpfr_sub(t_hi.get(), a.hi.get(), offset.lo.get(), MPFR_RNDU);
  mpfr_div(t_hi.get(), t_hi.get(), mpfr_sgn(t_hi.get()) >= 0 ? pi_.lo.get() : pi_.hi.get(), MPFR_RNDU);
  mpfr_ceil(t_lo.get(), t_lo.get());
  mpfr_floor(t_hi.get(), t_hi.get());
  Integer j_min, j_max;
  mpfr_get_z(j_min.get_mpz_t(), t_lo.get(), MPFR_RNDN);
  mpfr_get_z(j_max.get_mpz_t(), t_hi.get(), MPFR_RNDN);
  if (j_max - j_min >= 1) return r;  // both a maximum and a minimum may be inside

  auto f = sine ? mpfr_sin : mpfr_cos;
  BigFloat t(precision_);
  f(r.lo.get(), a.lo.get(), MPFR_RNDD);
  f(r.hi.get(), a.lo.get(), MPFR_RNDU);
  f(t.get(), a.hi.get(), MPFR_RNDD);
  set_min(r.lo.get(), t.get());
  f(t.get(), a.hi.get(), MPFR_RNDU);
  set_max(r.hi.get(), t.get());
  if (j_max == j_min) {
    if (mpz_even_p(j_min.get_mpz_t()))
      mpfr_set_si(r.hi.get(), 1, MPFR_RNDU);
    else
      mpfr_set_si(r.lo.get(), -1, MPFR_RNDD);
  }
  if (mpfr_cmp_si(r.lo.get(), -1) < 0) mpfr_set_si(r.lo.get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi.get(), 1) > 0) mpfr_set_si(r.hi.get(), 1, MPFR_RNDU);
  return r;
}

}  // namespace cutpoint::detail
