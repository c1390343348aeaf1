#include <doctest.h>

#include <random>

#include "cutpoint/constructions.hpp"
#include "support/oracles.hpp"

using namespace cutpoint;

namespace {

Expr r(long p, long q = 1) { return Expr(Rational(p, q)); }

Rational exact(const Expr& e) {
  REQUIRE(e.rational_value());
  return *e.rational_value();
}

oracle::Q qv(const Expr& e) { return exact(e).get(); }

struct Complex {
  Expr re;
  Expr im;
};

Complex mul(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// t^3 - c2 t^2 - c1 t - c0 at a complex point
Complex cubic_at(const Complex& t, const Expr& c2, const Expr& c1, const Expr& c0) {
  const Complex t2 = mul(t, t);
  const Complex t3 = mul(t2, t);
  return {t3.re - c2 * t2.re - c1 * t.re - c0, t3.im - c2 * t2.im - c1 * t.im};
}

// characteristic polynomial coefficients of a 3x3 rational matrix, in the
// form t^3 = c2 t^2 + c1 t + c0
std::array<oracle::Q, 3> char_poly(const oracle::Mat& m) {
  const oracle::Q tr = m[0][0] + m[1][1] + m[2][2];
  const oracle::Q minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                           m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const oracle::Q det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return {tr, -minors, det};
}

bool is_zero(const Expr& e) { return compare_values(e, 0) == 0; }

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("Rabin PFA and the bin-reverse oracle") {
    const PFA p = rabin_pfa();
    CHECK(exact(accept_prob_pfa(p, "1")) == Rational(1, 2));
    CHECK(exact(accept_prob_pfa(p, "0")) == Rational(0));
    CHECK(exact(accept_prob_pfa(p, "011")) == Rational(3, 4));
    CHECK(bin_reverse_oracle("1") == Rational(1, 2));
    CHECK(bin_reverse_oracle("10") == Rational(1, 4));
    CHECK(bin_reverse_oracle("00000") == Rational(0));
    CHECK(bin_reverse_oracle("") == Rational(0));
    CHECK_THROWS_AS(bin_reverse_oracle("12"), SymbolError);
    CHECK(p.initial() == 0);
    CHECK(p.accepting() == std::vector<Index>{1});
  }

  TEST_CASE("scaled Rabin PFA") {
    CHECK(exact(accept_prob_pfa(rabin_alpha_pfa(r(1, 2)), "1")) == Rational(1, 4));
    CHECK(exact(accept_prob_pfa(rabin_alpha_pfa(r(1, 3)), "11")) == Rational(1, 4));
    const PFA one = rabin_alpha_pfa(r(1));
    const PFA base = rabin_pfa();
    for (char c : std::string("01"))
      for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) CHECK(exact(one.matrix(c)(i, j)) == exact(base.matrix(c)(i, j)));
    CHECK_THROWS_AS(rabin_alpha_pfa(r(0)), RangeError);
    CHECK_THROWS_AS(rabin_alpha_pfa(r(3, 2)), RangeError);
    CHECK_THROWS_AS(rabin_alpha_pfa(r(-1, 2)), RangeError);
  }

  TEST_CASE("rotation QFA") {
    const QFA q = rotation_qfa(fixed_rotation());
    const Matrix& m = q.matrix('0');
    CHECK(exact(m(0, 0)) == Rational(3, 5));
    CHECK(exact(m(0, 1)) == Rational(-4, 5));
    CHECK(exact(m(1, 0)) == Rational(4, 5));
    CHECK(exact(m(1, 1)) == Rational(3, 5));
    CHECK(q.accepting() == std::vector<Index>{0});
    CHECK(exact(qfa_prob_oracle(fixed_rotation(), 0)) == Rational(1));
    CHECK(exact(qfa_prob_oracle(fixed_rotation(), 1)) == Rational(9, 25));
    CHECK(exact(qfa_prob_oracle(fixed_rotation(), 2)) == Rational(49, 625));
    CHECK_THROWS_AS(RotationAngle::turns(IrrationalParam::rational(Rational(0))), RangeError);
    CHECK_THROWS_AS(RotationAngle::turns(IrrationalParam::rational(Rational(1))), RangeError);
    CHECK_THROWS_AS(RotationAngle::unit_point(Rational(1, 2), Rational(1, 2)), RangeError);
  }

  TEST_CASE("symbolic rotation matches cos^2 at high precision") {
    const RotationAngle a = RotationAngle::turns(IrrationalParam::quadratic(Quadratic::parse("sqrt(2)/8")));
    const QFA q = rotation_qfa(a);
    const Enclosure sim = eval(accept_prob(AnyAutomaton(q), '0', 2), 128);
    CHECK(oracle::near(sim, oracle::decimal(oracle::kCos2SqrtTwoOverEight), oracle::pow10(-19)));
    for (unsigned long j : {0UL, 1UL, 5UL, 17UL}) {
      const Enclosure lhs = eval(accept_prob(AnyAutomaton(q), '0', j), 160);
      const Enclosure rhs = eval(qfa_prob_oracle(a, j), 160);
      CHECK(lhs.overlaps(rhs));
      CHECK(lhs.width() < Rational::pow2(-100));
    }
  }

  TEST_CASE("unary PFA B_x") {
    const PFA q = unary_pfa_Bx(r(1, 2));
    CHECK(exact(accept_prob(AnyAutomaton(q), '0', 0)) == Rational(0));
    CHECK(exact(accept_prob(AnyAutomaton(q), '0', 1)) == Rational(0));
    CHECK(exact(accept_prob(AnyAutomaton(q), '0', 2)) == Rational(1));
    CHECK(exact(accept_prob(AnyAutomaton(q), '0', 3)) == Rational(0));
    CHECK(q.initial() == 0);
    CHECK(q.accepting() == std::vector<Index>{2});
    CHECK(is_column_stochastic(matrix_Bx(r(1, 7))));
    CHECK_THROWS_AS(unary_pfa_Bx(r(0)), RangeError);
    CHECK_THROWS_AS(unary_pfa_Bx(r(3, 5)), RangeError);
    CHECK_NOTHROW(unary_pfa_Bx(Expr(Quadratic::parse("sqrt(2)/4"))));
  }

  TEST_CASE("closed-form coefficients at x = 1/2") {
    const ClosedFormCoefficients k = closed_form_coeffs(r(1, 2));
    CHECK(exact(k.a) == Rational(2, 5));
    CHECK(exact(k.b) == Rational(-1, 5));
    CHECK(exact(k.c) == Rational(3, 5));
    CHECK(*k.amplitude.exact_value() == Quadratic::parse("sqrt(10)/5"));
    CHECK(exact(k.eigen_re) == Rational(-1, 2));
    CHECK(exact(k.eigen_im) == Rational(1, 2));
    const Enclosure theta = eval(k.theta, 128);
    CHECK(oracle::near(theta, oracle::decimal(oracle::kThreeQuarterPi), oracle::pow10(-40)));
    CHECK(theta.width() < Rational::pow2(-100));
    CHECK(eval(k.theta - Expr::pi() * r(3, 4), 256).contains(Rational(0)));
    const Enclosure gamma = eval(k.gamma, 128);
    CHECK(oracle::near(gamma, oracle::decimal(oracle::kAcosMinusInvSqrt10), oracle::pow10(-40)));
    CHECK_THROWS_AS(closed_form_coeffs(r(2, 3)), RangeError);
  }

  TEST_CASE("closed form at x = 1/2") {
    CHECK(eval(closed_form_prob(r(1, 2), 2), 128).contains(Rational(1)));
    CHECK(eval(closed_form_prob(r(1, 2), 0), 128).contains(Rational(0)));
    CHECK(eval(closed_form_prob(r(1, 2), 3), 128).contains(Rational(0)));
    CHECK(exact(eigenform_prob(r(1, 2), 0)) == Rational(0));
    CHECK(exact(eigenform_prob(r(1, 2), 2)) == Rational(1));
    CHECK(exact(eigenform_prob(r(1, 2), 3)) == Rational(0));
  }

  TEST_CASE("cutpoint lambda") {
    CHECK(exact(cutpoint_lambda(r(1, 3))) == Rational(1, 2));
    CHECK(exact(cutpoint_lambda(r(1, 2))) == Rational(2, 5));
    CHECK(exact(cutpoint_lambda(r(1, 1000))) == Rational(1000, 1003));
  }

  TEST_CASE("B_{x,alpha}") {
    const Matrix at_one = matrix_Bxalpha(r(1, 16), r(1));
    const Matrix bx = matrix_Bx(r(1, 16));
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) CHECK(exact(at_one(i, j)) == exact(bx(i, j)));
    const Matrix m = matrix_Bxalpha(r(1, 16), r(19, 32));
    CHECK(exact(m(2, 0)) == Rational(0));
    CHECK(exact(m(2, 1)) == Rational(1));
    CHECK(exact(m(2, 2)) == Rational(7, 8));
    CHECK(exact(m(1, 1)) == Rational(-13, 32));
    CHECK_FALSE(is_column_stochastic(m));
    CHECK_THROWS_AS(matrix_Bxalpha(r(1, 10), r(3, 4)), RangeError);
    CHECK_THROWS_AS(matrix_Bxalpha(r(1, 20), r(1, 2)), RangeError);
  }

  TEST_CASE("stochastic cube at x = 1/16") {
    const Expr x = r(1, 16);
    const Expr a = qprime_alpha(x);
    CHECK(exact(a) == Rational(19, 32));
    const Matrix cube = mat_pow(matrix_Bxalpha(x, a), 3);
    const Matrix shown = displayed_cube(x, a);
    const oracle::Mat ref = oracle::multiply(oracle::bx_alpha(oracle::q(1, 16), oracle::q(19, 32)),
                                             oracle::multiply(oracle::bx_alpha(oracle::q(1, 16), oracle::q(19, 32)),
                                                              oracle::bx_alpha(oracle::q(1, 16), oracle::q(19, 32))));
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) {
        CHECK(exact(cube(i, j)) == exact(shown(i, j)));
        CHECK(qv(cube(i, j)) == ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
    CHECK(is_column_stochastic(cube));
    const PFA p = qprime_pfa(x);
    CHECK(exact(accept_prob(AnyAutomaton(p), '0', 1)) == Rational(133, 256));
    CHECK(exact(accept_prob(AnyAutomaton(p), '0', 0)) == Rational(0));
    CHECK_THROWS_AS(qprime_pfa(r(1, 10)), RangeError);
    CHECK_NOTHROW(qprime_pfa(Expr(Quadratic::parse("sqrt(2)/20"))));
    CHECK_THROWS_AS(qprime_pfa(Expr::pi() / 40), RangeError);
  }

  TEST_CASE("primed closed form") {
    CHECK(exact(primed_constant_term(r(1, 16))) == Rational(1, 2));
    CHECK(exact(primed_constant_term(r(1, 11))) == Rational(1, 2));
    CHECK(exact(primed_eigenform_prob(r(1, 16), 1)) == Rational(133, 256));
    CHECK(exact(primed_eigenform_prob(r(1, 16), 0)) == Rational(0));
    CHECK(eval(primed_closed_form_prob(r(1, 16), 1), 128).contains(Rational(133, 256)));
    CHECK(eval(primed_closed_form_prob(r(1, 16), 0), 128).contains(Rational(0)));

    const PrimedCoefficients one = primed_coefficients(r(1, 16), r(1));
    const ClosedFormCoefficients base = closed_form_coeffs(r(1, 16));
    CHECK(exact(one.a) == exact(base.a));
    CHECK(exact(one.b) == exact(base.b));
    CHECK(*one.c.exact_value() == *base.c.exact_value());
    const PrimedCoefficients p = primed_coefficients(r(1, 16), r(19, 32));
    CHECK(exact(p.a) == Rational(1, 2));
    CHECK(exact(p.b) == Rational(19, 32) * exact(base.b));

    const oracle::Mat m = oracle::bx_alpha(oracle::q(1, 16), oracle::q(19, 32));
    CHECK(oracle::power_entry(m, 0, 2, 0) == 0);
    CHECK(oracle::power_entry(m, 1, 2, 0) == 0);
    CHECK(oracle::power_entry(m, 2, 2, 0) == oracle::q(19, 32));
    const Matrix b = matrix_Bxalpha(r(1, 16), r(19, 32));
    CHECK(exact(mat_pow(b, 2)(2, 0)) == Rational(19, 32));
  }

  TEST_CASE("eigenvalues of B_x") {
    for (const Expr& x : {r(1, 4), r(1, 2), r(1, 16)}) {
      const auto ev = eigenvalues_Bx(x);
      CHECK(exact(ev[0].re) == Rational(1));
      CHECK(exact(ev[0].im) == Rational(0));
      const Complex r2{ev[1].re, ev[1].im}, r3{ev[2].re, ev[2].im};
      const Complex prod = mul(r2, r3);
      CHECK(is_zero(prod.re - x));
      CHECK(is_zero(prod.im));
      CHECK(is_zero(r2.re + r3.re + 2 * x));
      CHECK(is_zero(r2.im + r3.im));
      CHECK(is_zero(r2.re * r2.re + r2.im * r2.im - x));
    }
    // t^3 = (1-2x) t^2 + x t + x
    const Expr x = r(1, 4);
    for (const auto& e : eigenvalues_Bx(x)) {
      const Complex v = cubic_at({e.re, e.im}, 1 - 2 * x, x, x);
      CHECK(is_zero(v.re));
      CHECK(is_zero(v.im));
    }
    const auto cp = char_poly(oracle::bx_alpha(oracle::q(1, 16), oracle::q(19, 32)));
    for (const auto& e : eigenvalues_Bx(r(1, 16))) {
      const Complex v = cubic_at({e.re, e.im}, Expr(Rational(cp[0])), Expr(Rational(cp[1])), Expr(Rational(cp[2])));
      CHECK(is_zero(v.re));
      CHECK(is_zero(v.im));
    }
  }
}

TEST_SUITE("constructions properties") {
  TEST_CASE("closed form agrees with the recurrence oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> den(3, 60);
    for (int trial = 0; trial < 12; ++trial) {
      const long d = den(rng);
      std::uniform_int_distribution<long> num(1, d / 2);
      const long n = num(rng);
      const Expr x = r(n, d);
      const std::vector<oracle::Q> f = oracle::bx_recurrence(oracle::q(n, d), 41);
      const PFA p = unary_pfa_Bx(x);
      for (unsigned long m = 0; m <= 40; ++m) {
        CHECK(qv(eigenform_prob(x, m)) == f[m]);
        CHECK(qv(accept_prob(AnyAutomaton(p), '0', m)) == f[m]);
        if (m % 10 == 0) CHECK(eval(closed_form_prob(x, m), 128).contains(Rational(f[m])));
      }
    }
  }

  TEST_CASE("primed scaling identity") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 8; ++trial) {
      const long d = std::uniform_int_distribution<long>(11, 80)(rng);
      const long n = std::uniform_int_distribution<long>(1, (d - 1) / 10)(rng);
      const long ad = std::uniform_int_distribution<long>(3, 40)(rng);
      const long an = std::uniform_int_distribution<long>(ad / 2 + 1, ad)(rng);
      const oracle::Mat b = oracle::bx(oracle::q(n, d));
      const Matrix ba = matrix_Bxalpha(r(n, d), r(an, ad));
      for (unsigned long m = 0; m <= 30; ++m)
        CHECK(qv(mat_pow(ba, m)(2, 0)) == oracle::q(an, ad) * oracle::power_entry(b, static_cast<unsigned>(m), 2, 0));
    }
  }

  TEST_CASE("stochastic cube for sampled x") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
      const long d = std::uniform_int_distribution<long>(11, 500)(rng);
      const long n = std::uniform_int_distribution<long>(1, (d - 1) / 10)(rng);
      const Expr x = r(n, d);
      const PFA p = qprime_pfa(x);
      CHECK(is_column_stochastic(p.matrix('0')));
      CHECK(exact(primed_constant_term(x)) == Rational(1, 2));
      const std::vector<oracle::Q> f = oracle::bx_recurrence(oracle::q(n, d), 31);
      for (unsigned long m = 0; m <= 10; ++m)
        CHECK(qv(accept_prob(AnyAutomaton(p), '0', m)) == (3 * oracle::q(n, d) + 1) / 2 * f[3 * m]);
    }
  }

  TEST_CASE("distance to lambda has the sign of the cosine") {
    for (const Expr& x : {r(1, 10), r(1, 4), r(1, 3), r(1, 2), r(3, 7)}) {
      const ClosedFormCoefficients k = closed_form_coeffs(x);
      for (unsigned long m = 0; m <= 30; ++m) {
        const Expr diff = eigenform_prob(x, m) - cutpoint_lambda(x);
        if (is_zero(diff)) continue;
        const Expr c = cos(Expr(static_cast<long>(m)) * k.theta + k.gamma);
        CHECK(certified_sign(diff) == certified_sign(c));
      }
    }
  }

  TEST_CASE("coefficients satisfy their defining formulas") {
    for (const Expr& x : {r(1, 10), r(1, 5), r(2, 7), r(1, 2)}) {
      const ClosedFormCoefficients k = closed_form_coeffs(x);
      CHECK(is_zero(k.a - 1 / (3 * x + 1)));
      CHECK(is_zero(k.b + 1 / (6 * x + 2)));
      CHECK(is_zero(k.c * (6 * x + 2) * k.eigen_im - (x + 1)));
      CHECK(is_zero(k.amplitude * k.amplitude - k.b * k.b - k.c * k.c));
      CHECK(is_zero(k.eigen_im * k.eigen_im - x + x * x));
    }
  }
}
