#include <doctest.h>

#include <random>

#include "cutpoint/separation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cutpoint;

namespace {

Expr r(long p, long q = 1) { return Expr(Rational(p, q)); }

IrrationalParam quad(const char* text) { return IrrationalParam::quadratic(Quadratic::parse(text)); }

// shortest z, then smallest bin(z^r), strictly inside (lo, hi)
std::string enumerate_density(const oracle::Q& lo, const oracle::Q& hi) {
  for (std::size_t len = 1; len <= 24; ++len) {
    const unsigned long count = 1UL << len;
    for (unsigned long k = 0; k < count; ++k) {
      const oracle::Q v(k, count);
      if (!(lo < v && v < hi)) continue;
      std::string z;
      for (std::size_t i = 0; i < len; ++i) z.push_back(((k >> i) & 1UL) ? '1' : '0');
      return z;
    }
  }
  return "";
}

// side of 1/2 of f(0^n) for the rotation QFA at 256 bits, by direct simulation
int side_of_half(const IrrationalParam& a, unsigned long n) {
  const QFA q = rotation_qfa(RotationAngle::turns(a));
  const Enclosure e = eval(accept_prob(AnyAutomaton(q), '0', n), 256);
  if (e.lower > Rational(1, 2)) return 1;
  if (e.upper < Rational(1, 2)) return -1;
  return 0;
}

void check_unary(const WitnessCertificate& w, const Rational& x1, const Rational& x2, UnaryMode mode) {
  REQUIRE(w.unary);
  REQUIRE(w.scan.has_value());
  const unsigned long n = w.unary_length;
  CHECK(n == w.scan->witness_length);
  CHECK(w.scan->witness_signs[0] != w.scan->witness_signs[1]);
  CHECK(w.decisions[0].member != w.decisions[1].member);
  CHECK(w.replay());
  // exact oracle: recurrence values against the cutpoints
  const std::array<Rational, 2> xs{x1, x2};
  for (std::size_t i = 0; i < 2; ++i) {
    const oracle::Q x = xs[i].get();
    oracle::Q f, cut;
    if (mode == UnaryMode::Variable) {
      f = oracle::bx_recurrence(x, n + 1)[n];
      cut = 1 / (3 * x + 1);
    } else {
      f = (3 * x + 1) / 2 * oracle::bx_recurrence(x, 3 * n + 1)[3 * n];
      cut = oracle::q(1, 2);
    }
    CHECK(f != cut);
    CHECK((f > cut) == w.decisions[i].member);
    // opposite sides of the cutpoint match the certified cosine signs
    CHECK((f > cut) == (w.scan->witness_signs[i] == Sign::Positive));
  }
}

}  // namespace

TEST_SUITE("separation") {
  TEST_CASE("density witness examples") {
    CHECK(find_density_witness(Expr(Rational::parse("0.3")), Expr(Rational::parse("0.7"))) == "1");
    CHECK(find_density_witness(r(0), r(1)) == "1");
    CHECK(find_density_witness(r(5, 8), r(3, 4)) == "1101");
    CHECK(enumerate_density(oracle::q(5, 8), oracle::q(3, 4)) == "1101");
    CHECK(bin_reverse_oracle("1101") == Rational(11, 16));
    CHECK_THROWS_AS(find_density_witness(r(1, 2), r(1, 2)), RangeError);
    CHECK_THROWS_AS(find_density_witness(r(-1, 2), r(1, 2)), RangeError);
    CHECK(find_density_witness(Expr::pi() / 8, Expr::pi() / 7) == enumerate_density(oracle::decimal("0.39269908169872415481"),
                                                                                      oracle::decimal("0.44879895051282760549")));
  }

  TEST_CASE("scaled pair examples") {
    CHECK_THROWS_AS(scaled_pair_separation(r(1, 2), Expr(Rational::parse("0.3")), Expr(Rational::parse("0.7"))),
                    RangeError);
    const WitnessCertificate w = scaled_pair_separation(r(1, 4), r(1, 3), r(2, 3));
    CHECK(w.word == "1");
    CHECK(*w.decisions[0].probability.rational_value() == Rational(3, 8));
    CHECK(*w.decisions[1].probability.rational_value() == Rational(3, 16));
    CHECK(w.decisions[0].member);
    CHECK_FALSE(w.decisions[1].member);
    CHECK(w.replay());
    const WitnessCertificate v =
        scaled_pair_separation(r(1, 2), Expr(Rational::parse("0.51")), Expr(Rational::parse("0.99")));
    CHECK(v.decisions[0].member);
    CHECK_FALSE(v.decisions[1].member);
    CHECK(v.replay());
    const oracle::Q b = oracle::bin_reverse(v.word);
    CHECK(oracle::q(51, 100) < b);
    CHECK(b < oracle::q(99, 100));
    CHECK_THROWS_AS(scaled_pair_separation(r(1, 4), r(2, 3), r(1, 3)), RangeError);
  }

  TEST_CASE("first differing digit") {
    const DigitContext c = first_diff_digit(quad("sqrt(2)/8"), quad("sqrt(3)/8"));
    CHECK(c.j == 4);
    CHECK(c.alpha_jm2 == oracle::kDigitsSqrt2Over8[1]);
    CHECK(c.alpha_jm1 == oracle::kDigitsSqrt2Over8[2]);
    CHECK(c.alpha_j == oracle::kDigitsSqrt2Over8[3]);
    CHECK(c.beta_j == oracle::kDigitsSqrt3Over8[3]);
    CHECK_THROWS_AS(first_diff_digit(quad("sqrt(2)/8"), quad("sqrt(2)/8")), DigitBudgetExhausted);
    // 0.001... vs 0.000...
    const DigitContext d = first_diff_digit(quad("sqrt(2)/8"), quad("sqrt(2)/16"));
    CHECK(d.j == 3);
    CHECK_THROWS_AS(first_diff_digit(quad("sqrt(2)/4"), quad("sqrt(3)/8")), RangeError);
  }

  TEST_CASE("quadrant witness for sqrt(2)/8 and sqrt(3)/8") {
    const WitnessCertificate w = qfa_quadrant_witness(quad("sqrt(2)/8"), quad("sqrt(3)/8"));
    REQUIRE(w.quadrant.has_value());
    const QuadrantWitness& q = *w.quadrant;
    CHECK(q.digits.j == 4);
    CHECK(q.input_length == 2);
    CHECK(w.unary_length == 2);
    CHECK(q.quadrant == 2);  // digits alpha_2 alpha_3 = 0 1
    CHECK_FALSE(w.decisions[0].member);
    CHECK(w.decisions[1].member);
    CHECK(oracle::near(w.decisions[0].enclosure, oracle::decimal(oracle::kCos2SqrtTwoOverEight), oracle::pow10(-18)));
    CHECK(oracle::near(w.decisions[1].enclosure, oracle::decimal(oracle::kCos2SqrtThreeOverEight), oracle::pow10(-18)));
    CHECK(side_of_half(quad("sqrt(2)/8"), 2) == -1);
    CHECK(side_of_half(quad("sqrt(3)/8"), 2) == 1);
    CHECK(w.replay());
    CHECK_THROWS_AS(qfa_quadrant_witness(IrrationalParam::rational(Rational(1, 8)), quad("sqrt(3)/8")), RangeError);
  }

  TEST_CASE("quadrant table rows") {
    std::mt19937_64 rng(21);
    for (int a_jm2 = 0; a_jm2 < 2; ++a_jm2)
      for (int a_jm1 = 0; a_jm1 < 2; ++a_jm1)
        for (int a_j = 0; a_j < 2; ++a_j) {
          const gen::QuadrantCase c = gen::quadrant_case(rng, 6, a_jm2, a_jm1, a_j);
          const WitnessCertificate w = qfa_quadrant_witness(c.alpha, c.beta);
          CAPTURE(c.alpha.to_string());
          CAPTURE(c.beta.to_string());
          REQUIRE(w.quadrant.has_value());
          CHECK(w.quadrant->digits.j == 6);
          CHECK(w.quadrant->quadrant == c.quadrant());
          CHECK(w.quadrant->expected_alpha_member == c.alpha_member());
          CHECK(w.decisions[0].member == c.alpha_member());
          CHECK(w.decisions[1].member == !c.alpha_member());
        }
  }

  TEST_CASE("drift bounds") {
    const DriftBounds v = angle_drift_bounds(r(1, 4), r(1, 2), UnaryMode::Variable);
    CHECK(v.holds);
    CHECK(v.drift_enclosure.upper < Rational(oracle::decimal("0.785398163397")));  // pi/4
    const DriftBounds f = angle_drift_bounds(r(1, 100), r(9, 100), UnaryMode::Fixed);
    CHECK(f.holds);
    CHECK(f.drift_enclosure.upper < Rational(oracle::decimal("1.047197551196")));  // pi/3
    const DriftBounds z = angle_drift_bounds(r(1, 5), r(1, 5), UnaryMode::Variable);
    CHECK(z.drift_enclosure.lower == Rational(0));
    CHECK(z.drift_enclosure.upper == Rational(0));
    CHECK(z.gamma_gap_enclosure.lower == Rational(0));
    CHECK(z.gamma_gap_enclosure.upper == Rational(0));
    CHECK_THROWS_AS(angle_drift_bounds(r(1, 2), r(1, 4), UnaryMode::Variable), RangeError);
    CHECK_THROWS_AS(angle_drift_bounds(r(1, 100), r(1, 5), UnaryMode::Fixed), RangeError);
  }

  TEST_CASE("unary witness examples") {
    const WitnessCertificate v = unary_pfa_witness(r(1, 4), r(1, 2), UnaryMode::Variable);
    CHECK(v.unary_length == 13);
    CHECK(v.scan->bracket_m == 12);
    CHECK_FALSE(v.scan->fallback_used);
    CHECK(*v.acceptors[0].cutpoint().rational_value() == Rational(4, 7));
    CHECK(*v.acceptors[1].cutpoint().rational_value() == Rational(2, 5));
    check_unary(v, Rational(1, 4), Rational(1, 2), UnaryMode::Variable);

    const WitnessCertificate f = unary_pfa_witness(r(1, 100), r(1, 20), UnaryMode::Fixed);
    CHECK(f.unary_length == 9);
    CHECK(*f.acceptors[0].cutpoint().rational_value() == Rational(1, 2));
    check_unary(f, Rational(1, 100), Rational(1, 20), UnaryMode::Fixed);

    CHECK_THROWS_AS(unary_pfa_witness(r(1, 4), r(1, 4), UnaryMode::Variable), RangeError);
    CHECK_THROWS_AS(unary_pfa_witness(r(1, 4), r(1, 2), UnaryMode::Fixed), RangeError);
    CHECK_THROWS_AS(unary_pfa_witness(r(1, 4), r(1, 2), UnaryMode::Variable, 3), ScanBudgetExhausted);
  }

  TEST_CASE("bracket signs can agree; the fallback still separates") {
    const WitnessCertificate v = unary_pfa_witness(r(1, 40), r(7, 20), UnaryMode::Variable);
    CHECK(v.scan->bracket_m == 6);
    CHECK(v.scan->bracket_signs[0] == v.scan->bracket_signs[1]);
    CHECK(v.scan->fallback_used);
    CHECK(v.unary_length == 3);
    check_unary(v, Rational(1, 40), Rational(7, 20), UnaryMode::Variable);

    const WitnessCertificate f = unary_pfa_witness(r(1, 200), r(9, 100), UnaryMode::Fixed);
    CHECK(f.scan->bracket_m == 4);
    CHECK(f.scan->fallback_used);
    CHECK(f.unary_length == 3);
    check_unary(f, Rational(1, 200), Rational(9, 100), UnaryMode::Fixed);
  }
}

TEST_SUITE("separation properties") {
  TEST_CASE("density witness is the enumeration answer") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      Rational a = gen::rational_in(rng, Rational(0), Rational(1), 300);
      Rational b = gen::rational_in(rng, Rational(0), Rational(1), 300);
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      CHECK(find_density_witness(Expr(a), Expr(b)) == enumerate_density(a.get(), b.get()));
    }
  }

  TEST_CASE("scaled pair certificates replay") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 15; ++trial) {
      const Rational l = gen::rational_in(rng, Rational(1, 20), Rational(9, 10), 50);
      const Rational a1 = gen::rational_in(rng, l, Rational(1), 50);
      const Rational a2 = gen::rational_in(rng, a1, Rational(1), 60);
      const WitnessCertificate w = scaled_pair_separation(Expr(l), Expr(a1), Expr(a2));
      CHECK(w.replay());
      const oracle::Q z = oracle::bin_reverse(w.word);
      // exact oracle on the scaled automata
      const oracle::Q f1 = oracle::pfa_run({oracle::rabin_a0(), oracle::rabin_alpha_a1(l.get() / a1.get())}, 0, {1}, w.word);
      const oracle::Q f2 = oracle::pfa_run({oracle::rabin_a0(), oracle::rabin_alpha_a1(l.get() / a2.get())}, 0, {1}, w.word);
      CHECK(f1 == l.get() / a1.get() * z);
      CHECK(f1 > l.get());
      CHECK(f2 < l.get());
    }
  }

  TEST_CASE("quadrant witnesses over random irrational pairs") {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<std::size_t> jd(5, 12);
    for (int trial = 0; trial < 24; ++trial) {
      const gen::QuadrantCase c = gen::quadrant_case(rng, jd(rng), bit(rng), bit(rng), bit(rng));
      const WitnessCertificate w = qfa_quadrant_witness(c.alpha, c.beta);
      const QuadrantWitness& q = *w.quadrant;
      CHECK(q.digits.j == c.j);
      CHECK(q.input_length == (1UL << (c.j - 3)));
      CHECK(q.quadrant == c.quadrant());
      CHECK(q.remainder_alpha_enclosure.lower > Rational(0));
      CHECK(q.remainder_beta_enclosure.lower > Rational(0));
      CHECK(q.remainder_alpha_enclosure.upper < Rational(oracle::decimal("0.7853981633974483")));
      CHECK(q.remainder_beta_enclosure.upper < Rational(oracle::decimal("0.7853981633974483")));
      CHECK(side_of_half(c.alpha, q.input_length) == (c.alpha_member() ? 1 : -1));
      CHECK(side_of_half(c.beta, q.input_length) == (c.alpha_member() ? -1 : 1));
      // swapping the arguments swaps the verdicts
      const WitnessCertificate s = qfa_quadrant_witness(c.beta, c.alpha);
      CHECK(s.decisions[0].member == w.decisions[1].member);
      CHECK(s.decisions[1].member == w.decisions[0].member);
    }
  }

  TEST_CASE("unary scans satisfy the bracket condition") {
    std::mt19937_64 rng(34);
    for (UnaryMode mode : {UnaryMode::Variable, UnaryMode::Fixed}) {
      const Rational top = mode == UnaryMode::Variable ? Rational(1, 2) : Rational(1, 10);
      for (int trial = 0; trial < 6; ++trial) {
        Rational x1 = gen::rational_in(rng, Rational(0), top, 200);
        Rational x2 = gen::rational_in(rng, Rational(0), top, 200);
        if (x1 == x2) continue;
        if (x2 < x1) std::swap(x1, x2);
        if (mode == UnaryMode::Variable && x2 == top) continue;
        const WitnessCertificate w = unary_pfa_witness(Expr(x1), Expr(x2), mode);
        CAPTURE(x1.to_string());
        CAPTURE(x2.to_string());
        check_unary(w, x1, x2, mode);
        // drift*m + gap <= pi < drift*(m+1) + gap < 2 pi, recomputed here
        const int k = mode == UnaryMode::Variable ? 1 : 3;
        const ClosedFormCoefficients c1 = closed_form_coeffs(Expr(x1)), c2 = closed_form_coeffs(Expr(x2));
        const Expr drift = k * (c2.theta - c1.theta);
        const Expr gap = c2.gamma - c1.gamma;
        const long m = static_cast<long>(w.scan->bracket_m);
        CHECK(certified_sign(Expr::pi() - (m * drift + gap)) == Sign::Positive);
        CHECK(certified_sign((m + 1) * drift + gap - Expr::pi()) == Sign::Positive);
        CHECK(certified_sign(2 * Expr::pi() - ((m + 1) * drift + gap)) == Sign::Positive);
        CHECK(certified_sign(c2.theta - c1.theta) == Sign::Positive);
      }
    }
  }
}
