#include "cutpoint/constructions.hpp"

#include <stdexcept>
#include <utility>

namespace cutpoint {

namespace {

// Checks lo < x < hi, with either end optionally closed.
void require_in(const Expr& x, const Expr& lo, bool lo_closed, const Expr& hi, bool hi_closed, const std::string& what,
                int max_bits = kDefaultMaxBits) {
  int below = compare_values(x, lo, max_bits);
  int above = compare_values(x, hi, max_bits);
  bool ok = (below > 0 || (lo_closed && below == 0)) && (above < 0 || (hi_closed && above == 0));
  if (!ok)
    throw RangeError(what + " = " + x.to_string() + " is not in " + (lo_closed ? "[" : "(") + lo.to_string() + ", " +
                     hi.to_string() + (hi_closed ? "]" : ")"));
}

const Expr kHalf = Rational(1, 2);
const Expr kTenth = Rational(1, 10);

}  // namespace

PFA rabin_pfa() {
  Matrix a0 = make_matrix({{1, kHalf}, {0, kHalf}});
  Matrix a1 = make_matrix({{kHalf, 0}, {kHalf, 1}});
  return PFA("01", {a0, a1}, 0, {1});
}

PFA rabin_alpha_pfa(const Expr& alpha, int max_bits) {
  require_in(alpha, 0, false, 1, true, "alpha", max_bits);
  Matrix a0 = make_matrix({{1, kHalf}, {0, kHalf}});
  Matrix a1 = make_matrix({{1 - alpha / 2, (1 - alpha) / 2}, {alpha / 2, (1 + alpha) / 2}});
  return PFA("01", {a0, a1}, 0, {1}, max_bits);
}

Rational bin_reverse_oracle(std::string_view word) {
  Rational value;
  Rational weight(1, 2);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it != '0' && *it != '1') throw SymbolError(std::string("not a binary symbol: '") + *it + "'");
    if (*it == '1') value += weight;
    weight /= 2;
  }
  return value;
}

RotationAngle RotationAngle::turns(const IrrationalParam& alpha) {
  if (alpha.exact() && (compare_values(alpha.value(), 0) <= 0 || compare_values(alpha.value(), 1) >= 0))
    throw RangeError("rotation parameter " + alpha.to_string() + " is not in (0, 1)");
  Expr angle = Expr(2) * Expr::pi() * alpha.value();
  return RotationAngle(cutpoint::cos(angle), cutpoint::sin(angle), alpha);
}

RotationAngle RotationAngle::unit_point(const Rational& c, const Rational& s) {
  if (c * c + s * s != Rational(1))
    throw RangeError("(" + c.to_string() + ", " + s.to_string() + ") is not on the unit circle");
  return RotationAngle(Expr(c), Expr(s), std::nullopt);
}

std::string RotationAngle::to_string() const {
  if (param_) return "2*pi*" + param_->to_string();
  return "(" + cos_.to_string() + ", " + sin_.to_string() + ")";
}

RotationAngle fixed_rotation() { return RotationAngle::unit_point(Rational(3, 5), Rational(4, 5)); }

QFA rotation_qfa(const RotationAngle& angle, int max_bits) {
  Matrix r = make_matrix({{angle.cos(), -angle.sin()}, {angle.sin(), angle.cos()}});
  return QFA("0", {r}, 0, {0}, max_bits);
}

namespace {

// (T_n(c), T_{n+1}(c)) for Chebyshev polynomials of the first kind.
std::pair<Rational, Rational> chebyshev_pair(const Rational& c, unsigned long n) {
  if (n == 0) return {Rational(1), c};
  auto [t, t1] = chebyshev_pair(c, n / 2);
  Rational even = 2 * t * t - 1;
  Rational odd = 2 * t * t1 - c;
  if (n % 2 == 0) return {even, odd};
  return {odd, 2 * t1 * t1 - 1};
}

}  // namespace

Expr qfa_prob_oracle(const RotationAngle& angle, unsigned long j) {
  if (angle.is_exact()) {
    Rational t = chebyshev_pair(*angle.cos().rational_value(), j).first;
    return Expr(t * t);
  }
  Expr c = cutpoint::cos(Expr(2) * Expr::pi() * Expr(static_cast<long>(j)) * angle.param()->value());
  return c * c;
}

Matrix matrix_Bx(const Expr& x) { return make_matrix({{0, 0, x}, {1, 0, x}, {0, 1, 1 - 2 * x}}); }

PFA unary_pfa_Bx(const Expr& x, int max_bits) {
  require_in(x, 0, false, kHalf, true, "x", max_bits);
  return PFA("0", {matrix_Bx(x)}, 0, {2}, max_bits);
}

ClosedFormCoefficients closed_form_coeffs(const Expr& x) {
  require_in(x, 0, false, kHalf, true, "x");
  ClosedFormCoefficients k;
  k.x = x;
  k.a = 1 / (3 * x + 1);
  k.b = -1 / (6 * x + 2);
  k.eigen_re = -x;
  k.eigen_im = sqrt(x - x * x);
  k.c = (x + 1) / ((6 * x + 2) * k.eigen_im);
  k.amplitude = sqrt(k.b * k.b + k.c * k.c);
  k.theta = acos(-sqrt(x));
  k.gamma = acos(k.b / k.amplitude);
  return k;
}

Expr closed_form_prob(const ClosedFormCoefficients& k, unsigned long m) {
  const Expr em(static_cast<long>(m));
  return k.a + 2 * k.amplitude * pow(sqrt(k.x), static_cast<long>(m)) * cos(em * k.theta + k.gamma);
}

Expr closed_form_prob(const Expr& x, unsigned long m) { return closed_form_prob(closed_form_coeffs(x), m); }

Expr eigenform_prob(const Expr& x, unsigned long m) {
  ClosedFormCoefficients k = closed_form_coeffs(x);
  Expr re = 1;
  Expr im = 0;
  for (unsigned long i = 0; i < m; ++i) {
    Expr next_re = k.eigen_re * re - k.eigen_im * im;
    im = k.eigen_re * im + k.eigen_im * re;
    re = std::move(next_re);
  }
  return k.a + 2 * (k.b * re - k.c * im);
}

Expr cutpoint_lambda(const Expr& x) {
  require_in(x, 0, false, kHalf, true, "x");
  return 1 / (3 * x + 1);
}

Matrix matrix_Bxalpha(const Expr& x, const Expr& alpha) {
  require_in(x, 0, false, kTenth, false, "x");
  require_in(alpha, kHalf, false, 1, true, "alpha");
  const Expr& a = alpha;
  return make_matrix({{1 - a, 1 - a, 1 + x - a}, {a, a - 1, a + x - 1}, {0, 1, 1 - 2 * x}});
}

Matrix displayed_cube(const Expr& x, const Expr& alpha) {
  const Expr& a = alpha;
  const Expr x2 = x * x;
  const Expr x3 = x2 * x;
  return make_matrix({
      {1 - a + a * x, 1 - a + a * x - 2 * x2, 1 + a * x - a - 3 * x2 + 4 * x3},
      {a * x, a * x + x - 2 * x2, x + a * x - 5 * x2 + 4 * x3},
      {a - 2 * a * x, a - 2 * a * x - x + 4 * x2, a - 2 * a * x - x + 8 * x2 - 8 * x3},
  });
}

Expr qprime_alpha(const Expr& x) { return (3 * x + 1) / 2; }

PFA qprime_pfa(const Expr& x, int max_bits) {
  if (!x.is_exact()) throw RangeError("qprime needs an exact parameter, got " + x.to_string());
  const Expr alpha = qprime_alpha(x);
  Matrix cube = mat_pow(matrix_Bxalpha(x, alpha), 3);
  Matrix expected = displayed_cube(x, alpha);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (!(*cube(i, j).exact_value() == *expected(i, j).exact_value()))
        throw std::logic_error("cube of B_{x,alpha} disagrees with its polynomial form at (" + std::to_string(i + 1) +
                               "," + std::to_string(j + 1) + ")");
  return PFA("0", {cube}, 0, {2}, max_bits);
}

PrimedCoefficients primed_coefficients(const Expr& x, const Expr& alpha) {
  require_in(x, 0, false, kTenth, false, "x");
  require_in(alpha, kHalf, false, 1, true, "alpha");
  ClosedFormCoefficients k = closed_form_coeffs(x);
  return {alpha * k.a, alpha * k.b, alpha * k.c};
}

Expr primed_constant_term(const Expr& x) {
  require_in(x, 0, false, kTenth, false, "x");
  return qprime_alpha(x) / (3 * x + 1);
}

Expr primed_closed_form_prob(const Expr& x, unsigned long m) {
  const Expr alpha = qprime_alpha(x);
  ClosedFormCoefficients k = closed_form_coeffs(x);
  const long n = 3 * static_cast<long>(m);
  return primed_constant_term(x) + 2 * alpha * k.amplitude * pow(sqrt(x), n) * cos(Expr(n) * k.theta + k.gamma);
}

Expr primed_eigenform_prob(const Expr& x, unsigned long m) {
  require_in(x, 0, false, kTenth, false, "x");
  return qprime_alpha(x) * eigenform_prob(x, 3 * m);
}

std::array<ComplexPair, 3> eigenvalues_Bx(const Expr& x) {
  require_in(x, 0, false, kHalf, true, "x");
  Expr im = sqrt(x - x * x);
  return {ComplexPair{1, 0}, ComplexPair{-x, im}, ComplexPair{-x, -im}};
}

}  // namespace cutpoint
