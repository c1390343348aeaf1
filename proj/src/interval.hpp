#pragma once

#include <unordered_map>

#include <mpfr.h>

#include "expr_node.hpp"

namespace cutpoint::detail {

// RAII mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

 private:
  mpfr_t value_;
};

struct Interval {
  BigFloat lo;
  BigFloat hi;
  explicit Interval(mpfr_prec_t precision) : lo(precision), hi(precision) {}
};

enum class Ambiguity { Width, Domain, Division };

// Thrown inside the evaluator when the working precision cannot settle a
// domain or division-by-zero question; the driver retries with more bits.
struct NeedsPrecision {
  Ambiguity reason;
};

// Outward-rounded interval evaluation of an expression DAG at a fixed
// working precision. Shared subexpressions are evaluated once.
class IntervalEvaluator {
 public:
  explicit IntervalEvaluator(mpfr_prec_t precision);
  const Interval& eval(const ExprNode& node);

 private:
  Interval compute(const ExprNode& node);
  Interval fresh() const { return Interval(precision_); }

  Interval exact(const Quadratic& value) const;
  Interval digit_stream(const ExprNode& node) const;
  Interval add(const Interval& a, const Interval& b) const;
  Interval sub(const Interval& a, const Interval& b) const;
  Interval mul(const Interval& a, const Interval& b) const;
  Interval div(const Interval& a, const Interval& b) const;
  Interval neg(const Interval& a) const;
  Interval power(const Interval& a, long n) const;
  Interval sqrt(const Interval& a) const;
  Interval acos(const Interval& a) const;
  Interval abs(const Interval& a) const;
  // cos when sine == false; sin otherwise.
  Interval trig(const Interval& a, bool sine) const;

  mpfr_prec_t precision_;
  Interval pi_;
  std::unordered_map<const ExprNode*, Interval> memo_;
};

}  // namespace cutpoint::detail
