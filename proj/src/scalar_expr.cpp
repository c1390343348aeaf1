#include "cutpoint/scalar_expr.hpp"

#include <algorithm>

#include "cutpoint/errors.hpp"
#include "expr_node.hpp"
#include "interval.hpp"

namespace cutpoint {

using detail::ExprAccess;
using detail::ExprNode;
using detail::NodePtr;

namespace {

NodePtr exact_node(const Quadratic& value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Exact;
  n->exact = value;
  return n;
}

const NodePtr& zero_node() {
  static const NodePtr node = exact_node(Quadratic(0));
  return node;
}

const NodePtr& one_node() {
  static const NodePtr node = exact_node(Quadratic(1));
  return node;
}

Expr make(ExprKind kind, const Expr& lhs, const Expr* rhs = nullptr, long exponent = 0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = ExprAccess::ptr(lhs);
  if (rhs) n->rhs = ExprAccess::ptr(*rhs);
  n->exponent = exponent;
  return ExprAccess::wrap(std::move(n));
}

bool is_exact_value(const Expr& e, int v) {
  const Quadratic* q = e.exact_value();
  return q && q->is_rational() && q->rational_part() == Rational(v);
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}
Expr::Expr(int value) : Expr(Quadratic(value)) {}
Expr::Expr(long value) : Expr(Quadratic(Rational(value))) {}
Expr::Expr(const Rational& value) : Expr(Quadratic(value)) {}
Expr::Expr(const Quadratic& value) {
  if (value.is_rational() && value.rational_part().is_zero())
    node_ = zero_node();
  else if (value.is_rational() && value.rational_part() == Rational(1))
    node_ = one_node();
  else
    node_ = exact_node(value);
}

Expr Expr::pi() {
  static const NodePtr node = [] {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Pi;
    return NodePtr(n);
  }();
  return Expr(node);
}

Expr Expr::digit_stream(std::shared_ptr<const DigitGenerator> digits, std::string label) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::DigitStream;
  n->digits = std::move(digits);
  n->label = std::move(label);
  return Expr(NodePtr(n));
}

ExprKind Expr::kind() const { return node_->kind; }

bool Expr::is_rational() const { return is_exact() && node_->exact.is_rational(); }

const Quadratic* Expr::exact_value() const { return is_exact() ? &node_->exact : nullptr; }

std::optional<Rational> Expr::rational_value() const {
  if (!is_rational()) return std::nullopt;
  return node_->exact.rational_part();
}

namespace {

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string render(const ExprNode& n);

std::string operand(const NodePtr& child, int parent_precedence, bool right_assoc_sensitive = false) {
  std::string s = render(*child);
  int p = precedence(child->kind);
  if (child->kind == ExprKind::Exact && !(child->exact.is_rational() && child->exact.rational_part().is_integer() &&
                                          child->exact.rational_part().sign() >= 0))
    p = 0;  // fractions, negatives and surds get parenthesized
  if (p < parent_precedence || (right_assoc_sensitive && p == parent_precedence)) return "(" + s + ")";
  return s;
}

std::string render(const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Exact:
      return n.exact.to_string();
    case ExprKind::Pi:
      return "pi";
    case ExprKind::DigitStream:
      return n.label.empty() ? "digits(?)" : n.label;
    case ExprKind::Add:
      return operand(n.lhs, 1) + " + " + operand(n.rhs, 1);
    case ExprKind::Sub:
      return operand(n.lhs, 1) + " - " + operand(n.rhs, 1, true);
    case ExprKind::Mul:
      return operand(n.lhs, 2) + "*" + operand(n.rhs, 2);
    case ExprKind::Div:
      return operand(n.lhs, 2) + "/" + operand(n.rhs, 2, true);
    case ExprKind::Neg:
      return "-" + operand(n.lhs, 3);
    case ExprKind::Pow:
      return operand(n.lhs, 5) + "^" + std::to_string(n.exponent);
    case ExprKind::Sqrt:
      return "sqrt(" + render(*n.lhs) + ")";
    case ExprKind::Acos:
      return "acos(" + render(*n.lhs) + ")";
    case ExprKind::Cos:
      return "cos(" + render(*n.lhs) + ")";
    case ExprKind::Sin:
      return "sin(" + render(*n.lhs) + ")";
    case ExprKind::Abs:
      return "abs(" + render(*n.lhs) + ")";
  }
  return "?";
}

}  // namespace

std::string Expr::to_string() const { return render(*node_); }

Expr Expr::operator-() const {
  if (const Quadratic* q = exact_value()) return Expr(-*q);
  if (kind() == ExprKind::Neg) return ExprAccess::wrap(node_->lhs);
  return make(ExprKind::Neg, *this);
}

Expr operator+(const Expr& lhs, const Expr& rhs) {
  if (is_exact_value(lhs, 0)) return rhs;
  if (is_exact_value(rhs, 0)) return lhs;
  if (lhs.is_exact() && rhs.is_exact())
    if (auto v = add(*lhs.exact_value(), *rhs.exact_value())) return Expr(*v);
  return make(ExprKind::Add, lhs, &rhs);
}

Expr operator-(const Expr& lhs, const Expr& rhs) {
  if (is_exact_value(rhs, 0)) return lhs;
  if (is_exact_value(lhs, 0)) return -rhs;
  if (lhs.is_exact() && rhs.is_exact())
    if (auto v = subtract(*lhs.exact_value(), *rhs.exact_value())) return Expr(*v);
  return make(ExprKind::Sub, lhs, &rhs);
}

Expr operator*(const Expr& lhs, const Expr& rhs) {
  if (is_exact_value(lhs, 0) || is_exact_value(rhs, 0)) return Expr();
  if (is_exact_value(lhs, 1)) return rhs;
  if (is_exact_value(rhs, 1)) return lhs;
  if (lhs.is_exact() && rhs.is_exact())
    if (auto v = multiply(*lhs.exact_value(), *rhs.exact_value())) return Expr(*v);
  return make(ExprKind::Mul, lhs, &rhs);
}

Expr operator/(const Expr& lhs, const Expr& rhs) {
  if (is_exact_value(rhs, 0)) throw DivisionByZero("division by exact zero");
  if (is_exact_value(rhs, 1)) return lhs;
  if (lhs.is_exact() && rhs.is_exact())
    if (auto v = divide(*lhs.exact_value(), *rhs.exact_value())) return Expr(*v);
  return make(ExprKind::Div, lhs, &rhs);
}

Expr& Expr::operator+=(const Expr& rhs) { return *this = *this + rhs; }
Expr& Expr::operator-=(const Expr& rhs) { return *this = *this - rhs; }
Expr& Expr::operator*=(const Expr& rhs) { return *this = *this * rhs; }
Expr& Expr::operator/=(const Expr& rhs) { return *this = *this / rhs; }

Expr sqrt(const Expr& arg) {
  if (const Quadratic* q = arg.exact_value()) {
    if (q->is_rational()) return Expr(Quadratic::sqrt_of(q->rational_part()));
    if (q->sign() < 0) throw DomainError("sqrt of negative value " + q->to_string());
  }
  return make(ExprKind::Sqrt, arg);
}

Expr acos(const Expr& arg) {
  if (const Quadratic* q = arg.exact_value()) {
    if (q->is_rational()) {
      const Rational& r = q->rational_part();
      if (r == Rational(1)) return Expr();
      if (r == Rational(-1)) return Expr::pi();
      if (r.is_zero()) return Expr::pi() / Expr(2);
    }
    auto one = Quadratic(1);
    if (subtract(*q, one)->sign() > 0 || add(*q, one)->sign() < 0)
      throw DomainError("arccos argument " + q->to_string() + " outside [-1, 1]");
  }
  return make(ExprKind::Acos, arg);
}

Expr cos(const Expr& arg) {
  if (is_exact_value(arg, 0)) return Expr(1);
  if (arg.kind() == ExprKind::Acos) return ExprAccess::wrap(arg.node().lhs);  // cos(acos u) = u
  return make(ExprKind::Cos, arg);
}

Expr sin(const Expr& arg) {
  if (is_exact_value(arg, 0)) return Expr();
  return make(ExprKind::Sin, arg);
}

Expr abs(const Expr& arg) {
  if (const Quadratic* q = arg.exact_value()) return q->sign() < 0 ? Expr(-*q) : arg;
  return make(ExprKind::Abs, arg);
}

Expr pow(const Expr& base, long exponent) {
  if (exponent < 0) return Expr(1) / pow(base, -exponent);
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (const Quadratic* q = base.exact_value()) return Expr(pow(*q, static_cast<unsigned long>(exponent)));
  return make(ExprKind::Pow, base, nullptr, exponent);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Rational to_rational(mpfr_srcptr x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x);
  return Rational(q);
}

// Width target 2^(1-level) * max(1, mig) where mig is the smallest magnitude
// in the interval, so the bound holds for the true value.
bool width_ok(const detail::Interval& r, int level) {
  const mpfr_prec_t prec = mpfr_get_prec(r.lo.get());
  detail::BigFloat width(prec), bound(prec);
  mpfr_sub(width.get(), r.hi.get(), r.lo.get(), MPFR_RNDU);
  if (mpfr_sgn(r.lo.get()) > 0)
    mpfr_set(bound.get(), r.lo.get(), MPFR_RNDD);
  else if (mpfr_sgn(r.hi.get()) < 0)
    mpfr_neg(bound.get(), r.hi.get(), MPFR_RNDD);
  else
    mpfr_set_zero(bound.get(), 1);
  if (mpfr_cmp_ui(bound.get(), 1) < 0) mpfr_set_ui(bound.get(), 1, MPFR_RNDD);
  mpfr_div_2si(bound.get(), bound.get(), level - 1, MPFR_RNDD);
  return mpfr_lessequal_p(width.get(), bound.get());
}

Enclosure raw_enclosure(const Expr& expr, int level) {
  if (auto r = expr.rational_value()) return Enclosure::exact(*r, level);
  const long limit = 4L * level + 1024;
  long working = level + 64;
  detail::Ambiguity last = detail::Ambiguity::Width;
  for (;;) {
    try {
      detail::IntervalEvaluator evaluator(static_cast<mpfr_prec_t>(working));
      const detail::Interval& r = evaluator.eval(expr.node());
      if (width_ok(r, level)) return Enclosure{to_rational(r.lo.get()), to_rational(r.hi.get()), level};
      last = detail::Ambiguity::Width;
    } catch (const detail::NeedsPrecision& np) {
      last = np.reason;
    }
    if (working >= limit) {
      switch (last) {
        case detail::Ambiguity::Domain:
          throw DomainError("argument not certifiably inside the domain at " + std::to_string(working) + " bits");
        case detail::Ambiguity::Division:
          throw DivisionByZero("denominator enclosure contains 0 at " + std::to_string(working) + " bits");
        case detail::Ambiguity::Width:
          throw PrecisionExhausted("enclosure too wide at " + std::to_string(working) + " working bits", false);
      }
    }
    working = std::min(2 * working, limit);
  }
}

int ladder_top(int precision_bits) {
  int level = kLadderStartBits;
  while (level < precision_bits) level *= 2;
  return level;
}

}  // namespace

const Enclosure& Evaluator::level(int bits) {
  auto it = raw_.find(bits);
  if (it == raw_.end()) it = raw_.emplace(bits, raw_enclosure(expr_, bits)).first;
  return it->second;
}

Enclosure Evaluator::at(int precision_bits) {
  if (precision_bits <= 0) throw std::invalid_argument("precision_bits must be positive");
  if (auto r = expr_.rational_value()) return Enclosure::exact(*r, precision_bits);
  const int top = ladder_top(precision_bits);
  Enclosure result = level(kLadderStartBits);
  for (int bits = 2 * kLadderStartBits; bits <= top; bits *= 2) result = intersect(result, level(bits));
  result.precision_bits = top;
  return result;
}

Enclosure eval(const Expr& expr, int precision_bits) { return Evaluator(expr).at(precision_bits); }

SignCertificate certify_sign(const Expr& expr, int max_bits) {
  if (const Quadratic* q = expr.exact_value()) {
    const int s = q->sign();
    if (s == 0) throw PrecisionExhausted("values are exactly equal (expression is zero)", true);
    Enclosure enc = q->is_rational() ? Enclosure::exact(q->rational_part(), kLadderStartBits) : eval(expr, kLadderStartBits);
    return {s > 0 ? Sign::Positive : Sign::Negative, enc};
  }
  Evaluator evaluator(expr);
  for (int bits = kLadderStartBits;; bits *= 2) {
    Enclosure enc = evaluator.at(bits);
    if (enc.lower.sign() > 0) return {Sign::Positive, enc};
    if (enc.upper.sign() < 0) return {Sign::Negative, enc};
    if (bits >= max_bits)
      throw PrecisionExhausted("sign undecided at " + std::to_string(bits) + " bits (enclosure " + enc.to_string() +
                                   ")",
                               false);
  }
}

Sign certified_sign(const Expr& expr, int max_bits) { return certify_sign(expr, max_bits).sign; }

Ordering certified_compare(const Expr& lhs, const Expr& rhs, int max_bits) {
  return certified_sign(lhs - rhs, max_bits) == Sign::Positive ? Ordering::Greater : Ordering::Less;
}

int compare_values(const Expr& lhs, const Expr& rhs, int max_bits) {
  Expr diff = lhs - rhs;
  if (const Quadratic* q = diff.exact_value()) return q->sign();
  return to_int(certified_sign(diff, max_bits));
}

std::string to_string(Sign s) { return s == Sign::Positive ? "positive" : "negative"; }
std::string to_string(Ordering o) { return o == Ordering::Greater ? "greater" : "less"; }

}  // namespace cutpoint
