#include "cutpoint/claims.hpp"

#include "cutpoint/constructions.hpp"
#include "cutpoint/separation.hpp"

namespace cutpoint {

namespace {

template <class Fn>
void for_each_word(std::size_t max_length, Fn&& fn) {
  for (std::size_t len = 0; len <= max_length; ++len) {
    for (unsigned long bits = 0; bits < (1UL << len); ++bits) {
      std::string w(len, '0');
      for (std::size_t i = 0; i < len; ++i)
        if (bits >> i & 1UL) w[i] = '1';
      fn(w);
    }
  }
}

bool equals(const Expr& e, const Rational& r) {
  auto v = e.rational_value();
  return v && *v == r;
}

}  // namespace

ClaimResult check_rabin_identity(std::size_t max_length) {
  ClaimResult r{.name = "rabin identity f(w) = bin(reverse w)", .passed = true};
  const PFA p = rabin_pfa();
  for_each_word(max_length, [&](const std::string& w) {
    ++r.cases;
    if (r.passed && !equals(accept_prob_pfa(p, w), bin_reverse_oracle(w))) {
      r.passed = false;
      r.detail = "mismatch on \"" + w + "\"";
    }
  });
  if (r.passed) r.detail = "all words up to length " + std::to_string(max_length);
  return r;
}

ClaimResult check_scaling_identity(std::size_t max_length) {
  ClaimResult r{.name = "scaled identity f(w) = alpha * bin(reverse w)", .passed = true};
  for (const Rational& alpha : {Rational(1, 7), Rational(1, 3), Rational(2, 5), Rational(9, 10)}) {
    const PFA p = rabin_alpha_pfa(alpha);
    for_each_word(max_length, [&](const std::string& w) {
      ++r.cases;
      if (r.passed && !equals(accept_prob_pfa(p, w), alpha * bin_reverse_oracle(w))) {
        r.passed = false;
        r.detail = "mismatch at alpha = " + alpha.to_string() + " on \"" + w + "\"";
      }
    });
  }
  if (r.passed) r.detail = "4 parameters, all words up to length " + std::to_string(max_length);
  return r;
}

ClaimResult check_stochastic_cube(std::size_t samples) {
  ClaimResult r{.name = "cube of B_{x,(3x+1)/2} is stochastic", .passed = true};
  for (std::size_t i = 1; i <= samples; ++i) {
    const Expr x = Rational(static_cast<long>(i), static_cast<long>(10 * (samples + 1)));
    ++r.cases;
    if (!is_column_stochastic(mat_pow(matrix_Bxalpha(x, qprime_alpha(x)), 3))) {
      r.passed = false;
      r.detail = "not stochastic at x = " + x.to_string();
      return r;
    }
  }
  r.detail = std::to_string(samples) + " rational x in (0, 1/10)";
  return r;
}

ClaimResult check_interval_claims(std::size_t samples, int max_bits) {
  ClaimResult r{.name = "theta_x and gamma_x interval claims", .passed = true};
  const Expr pi = Expr::pi();
  auto inside = [&](const Expr& v, const Expr& lo, const Expr& hi, bool hi_closed) {
    if (certified_sign(v - lo, max_bits) != Sign::Positive) return false;
    const int top = compare_values(v, hi, max_bits);
    return top < 0 || (hi_closed && top == 0);
  };
  auto run = [&](const Expr& top, bool narrow) {
    for (std::size_t i = 1; i <= samples && r.passed; ++i) {
      const Expr x = top * Expr(Rational(static_cast<long>(i), static_cast<long>(samples)));
      if (!narrow && i == samples) {
        // x = 1/2 puts theta exactly on 3pi/4; only the lower end is strict.
        ClosedFormCoefficients k = closed_form_coeffs(x);
        ++r.cases;
        const bool theta_ok = certified_sign(k.theta - pi / 2, max_bits) == Sign::Positive &&
                              eval(k.theta - Expr(3) * pi / 4, max_bits).contains(Rational(0));
        if (!theta_ok || !inside(k.gamma, pi / 2, Expr(11) * pi / 18, false)) {
          r.passed = false;
          r.detail = "fails at x = 1/2";
        }
        continue;
      }
      if (narrow && i == samples) continue;  // the narrow range is open at 1/10
      ClosedFormCoefficients k = closed_form_coeffs(x);
      ++r.cases;
      const bool ok = narrow ? inside(k.theta, pi / 2, Expr(11) * pi / 18, false) &&
                                   inside(k.gamma, pi / 2, Expr(11) * pi / 18, false)
                             : inside(k.theta, pi / 2, Expr(3) * pi / 4, true) &&
                                   inside(k.gamma, pi / 2, Expr(11) * pi / 18, false);
      if (!ok) {
        r.passed = false;
        r.detail = "fails at x = " + x.to_string();
      }
    }
  };
  run(Rational(1, 2), false);
  run(Rational(1, 10), true);
  if (r.passed) r.detail = "x sampled in (0, 1/2] and (0, 1/10)";
  return r;
}

ClaimResult check_quadrant_table(int max_bits) {
  ClaimResult r{.name = "quadrant table verdicts", .passed = true};
  // Parameters 0.00 d1 d2 e ... with an irrational tail below the fifth digit.
  for (int pattern = 0; pattern < 8; ++pattern) {
    const int d1 = pattern >> 2 & 1, d2 = pattern >> 1 & 1, flip = pattern & 1;
    auto param = [&](int last, long radicand) {
      Rational prefix = Rational(d1, 8) + Rational(d2, 16) + Rational(last, 32);
      Quadratic tail(Rational(0), Rational(1, 256), Integer(radicand));
      return IrrationalParam::quadratic(*add(Quadratic(prefix), tail));
    };
    const IrrationalParam a = param(flip ? 1 : 0, 2);
    const IrrationalParam b = param(flip ? 0 : 1, 3);
    ++r.cases;
    WitnessCertificate cert = qfa_quadrant_witness(a, b, kDefaultDigitBudget, max_bits);
    const QuadrantWitness& q = *cert.quadrant;
    const bool even = q.quadrant % 2 == 0;
    const bool alpha_member = q.digits.alpha_j == 1 ? even : !even;
    if (q.quadrant != 1 + 2 * d1 + d2 || cert.decisions[0].member != alpha_member ||
        cert.decisions[1].member == alpha_member || !cert.replay()) {
      r.passed = false;
      r.detail = "pattern " + std::to_string(pattern) + " disagrees";
      return r;
    }
  }
  r.detail = "8 digit patterns, both orientations";
  return r;
}

std::vector<ClaimResult> verify_all(int max_bits) {
  return {check_rabin_identity(), check_scaling_identity(), check_stochastic_cube(),
          check_interval_claims(20, max_bits), check_quadrant_table(max_bits)};
}

}  // namespace cutpoint
