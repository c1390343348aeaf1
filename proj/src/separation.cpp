#include "cutpoint/separation.hpp"

#include <algorithm>
#include <stdexcept>

namespace cutpoint {

namespace {

const Expr kHalf = Rational(1, 2);
const Expr kTenth = Rational(1, 10);

Integer certified_floor(const Expr& v, int max_bits) {
  if (const Quadratic* q = v.exact_value()) return q->floor();
  Evaluator evaluator(v);
  for (int bits = kLadderStartBits; bits <= max_bits; bits *= 2) {
    Enclosure e = evaluator.at(bits);
    Integer lo = e.lower.floor();
    if (lo == e.upper.floor()) return lo;
  }
  throw PrecisionExhausted("cannot certify floor of " + v.to_string() + " within " + std::to_string(max_bits) + " bits",
                           false);
}

bool certified_less(const Expr& a, const Expr& b, int max_bits) { return compare_values(a, b, max_bits) < 0; }

int max_precision(const std::array<MembershipDecision, 2>& d) {
  return std::max(d[0].precision_bits, d[1].precision_bits);
}

}  // namespace

std::string to_string(UnaryMode mode) { return mode == UnaryMode::Variable ? "variable-cutpoint" : "fixed-cutpoint"; }

std::string WitnessCertificate::witness_text() const {
  if (unary) return "0^" + std::to_string(unary_length);
  return word.empty() ? "<empty>" : word;
}

bool WitnessCertificate::replay() const {
  if (acceptors.size() != 2) return false;
  const int bits = std::max(precision_bits, kLadderStartBits);
  for (std::size_t i = 0; i < 2; ++i) {
    MembershipDecision d = unary ? decide(acceptors[i], '0', unary_length, bits) : decide(acceptors[i], word, bits);
    if (d.member != decisions[i].member) return false;
  }
  return decisions[0].member != decisions[1].member;
}

std::string find_density_witness(const Expr& lo, const Expr& hi, int max_bits) {
  if (compare_values(lo, 0, max_bits) < 0 || !certified_less(lo, hi, max_bits) || compare_values(hi, 1, max_bits) > 0)
    throw RangeError("density witness needs 0 <= lo < hi <= 1, got (" + lo.to_string() + ", " + hi.to_string() + ")");
  for (long length = 1; length <= max_bits; ++length) {
    const Rational scale = Rational::pow2(length);
    const Integer k = certified_floor(lo * Expr(scale), max_bits) + 1;
    const Integer limit = scale.numerator();
    if (k >= limit) continue;
    if (!certified_less(Expr(Rational(k) / scale), hi, max_bits)) continue;
    // k written with `length` binary digits is reverse(z).
    std::string z(static_cast<std::size_t>(length), '0');
    Integer rest = k;
    for (long i = 0; i < length; ++i) {
      if (mpz_tstbit(rest.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) z[static_cast<std::size_t>(i)] = '1';
    }
    return z;
  }
  throw PrecisionExhausted("no dyadic point found within " + std::to_string(max_bits) + " digits", false);
}

WitnessCertificate scaled_pair_separation(const Expr& lambda, const Expr& alpha1, const Expr& alpha2, int max_bits) {
  if (!certified_less(0, lambda, max_bits) || !certified_less(alpha2, 1, max_bits) ||
      !certified_less(alpha1, alpha2, max_bits))
    throw RangeError("scaled separation needs 0 < lambda, alpha1 < alpha2 < 1");
  if (!certified_less(lambda, alpha1, max_bits))
    throw RangeError("lambda/alpha1 = " + (lambda / alpha1).to_string() +
                     " is not below 1; the scaled automaton needs lambda < alpha1");

  WitnessCertificate cert;
  cert.family = "pfa-binary";
  cert.max_bits = max_bits;
  cert.word = find_density_witness(alpha1, alpha2, max_bits);
  cert.acceptors.emplace_back(rabin_alpha_pfa(lambda / alpha1, max_bits), lambda, max_bits);
  cert.acceptors.emplace_back(rabin_alpha_pfa(lambda / alpha2, max_bits), lambda, max_bits);
  for (std::size_t i = 0; i < 2; ++i) cert.decisions[i] = decide(cert.acceptors[i], cert.word, max_bits);
  cert.precision_bits = max_precision(cert.decisions);
  cert.derivation = "alpha1 < bin(reverse z) = " + bin_reverse_oracle(cert.word).to_string() +
                    " < alpha2, so P_{lambda/alpha1} accepts z above lambda and P_{lambda/alpha2} below it";
  if (!cert.decisions[0].member || cert.decisions[1].member)
    throw std::logic_error("scaled pair verdicts on " + cert.word + " are not (member, non-member)");
  return cert;
}

DigitContext first_diff_digit(const IrrationalParam& alpha, const IrrationalParam& beta, std::size_t max_index) {
  for (const IrrationalParam* p : {&alpha, &beta}) {
    BinaryDigits head = binary_digits(*p, 2);
    if (head.bits[0] != 0 || head.bits[1] != 0) throw RangeError("parameter " + p->to_string() + " is not in (0, 1/4)");
  }
  DigitContext ctx{.alpha = alpha, .beta = beta};
  for (std::size_t k = 3; k <= max_index; ++k) {
    const int a = alpha.digit(k);
    const int b = beta.digit(k);
    if (a != b) {
      ctx.j = k;
      ctx.alpha_jm2 = k >= 3 ? alpha.digit(k - 2) : 0;
      ctx.alpha_jm1 = alpha.digit(k - 1);
      ctx.alpha_j = a;
      ctx.beta_j = b;
      return ctx;
    }
  }
  throw DigitBudgetExhausted("digits of " + alpha.to_string() + " and " + beta.to_string() + " agree up to index " +
                             std::to_string(max_index));
}

namespace {

struct ReducedAngle {
  Expr reduced;
  Expr remainder;
  Enclosure remainder_enclosure;
};

// Angle 2*pi*2^(j-3)*p modulo 2*pi, split as 2*pi*K/8 + remainder where K is
// the digit triple (p_{j-2}, p_{j-1}, p_j).
ReducedAngle reduce_angle(const IrrationalParam& p, std::size_t j, int max_bits) {
  BinaryDigits digits = binary_digits(p, j);
  const Rational prefix = digit_prefix_value(digits.bits);
  const int k = 4 * digits.bits[j - 3] + 2 * digits.bits[j - 2] + digits.bits[j - 1];
  const Expr two_pi = Expr(2) * Expr::pi();
  ReducedAngle r;
  r.remainder = two_pi * Expr(Rational::pow2(static_cast<long>(j) - 3)) * (p.value() - Expr(prefix));
  r.reduced = two_pi * Expr(Rational(k, 8)) + r.remainder;
  SignCertificate lower = certify_sign(r.remainder, max_bits);
  SignCertificate upper = certify_sign(Expr::pi() / 4 - r.remainder, max_bits);
  if (lower.sign != Sign::Positive || upper.sign != Sign::Positive)
    throw std::logic_error("reduced remainder of " + p.to_string() + " escapes (0, pi/4)");
  r.remainder_enclosure = eval(r.remainder, std::max(lower.enclosure.precision_bits, upper.enclosure.precision_bits));
  return r;
}

}  // namespace

WitnessCertificate qfa_quadrant_witness(const IrrationalParam& alpha, const IrrationalParam& beta,
                                        std::size_t max_index, int max_bits) {
  for (const IrrationalParam* p : {&alpha, &beta})
    if (!p->is_irrational()) throw RangeError("parameter " + p->to_string() + " is not irrational");
  QuadrantWitness qw{.digits = first_diff_digit(alpha, beta, max_index)};
  const std::size_t j = qw.digits.j;
  if (j - 3 >= 8 * sizeof(unsigned long) - 1) throw RangeError("input length 2^" + std::to_string(j - 3) + " overflows");
  qw.input_length = 1UL << (j - 3);

  ReducedAngle ra = reduce_angle(alpha, j, max_bits);
  ReducedAngle rb = reduce_angle(beta, j, max_bits);
  qw.reduced_alpha = ra.reduced;
  qw.reduced_beta = rb.reduced;
  qw.remainder_alpha = ra.remainder;
  qw.remainder_beta = rb.remainder;
  qw.remainder_alpha_enclosure = ra.remainder_enclosure;
  qw.remainder_beta_enclosure = rb.remainder_enclosure;
  qw.quadrant = 1 + 2 * qw.digits.alpha_jm2 + qw.digits.alpha_jm1;

  // The parameter with digit j = 1 sits in the upper half of its quadrant.
  const bool even = qw.quadrant % 2 == 0;
  qw.expected_alpha_member = qw.digits.alpha_j == 1 ? even : !even;
  qw.expected_beta_member = !qw.expected_alpha_member;

  WitnessCertificate cert;
  cert.family = "qfa";
  cert.max_bits = max_bits;
  cert.unary = true;
  cert.unary_length = qw.input_length;
  cert.acceptors.emplace_back(rotation_qfa(RotationAngle::turns(alpha), max_bits), kHalf, max_bits);
  cert.acceptors.emplace_back(rotation_qfa(RotationAngle::turns(beta), max_bits), kHalf, max_bits);
  for (std::size_t i = 0; i < 2; ++i) cert.decisions[i] = decide(cert.acceptors[i], '0', qw.input_length, max_bits);
  cert.precision_bits = max_precision(cert.decisions);
  cert.derivation = "first differing digit j = " + std::to_string(j) + "; input length 2^" + std::to_string(j - 3) +
                    " puts both angles in quadrant " + std::to_string(qw.quadrant) + " on opposite sides of pi/4";
  if (cert.decisions[0].member != qw.expected_alpha_member || cert.decisions[1].member != qw.expected_beta_member)
    throw std::logic_error("simulation contradicts the quadrant table for quadrant " + std::to_string(qw.quadrant));
  cert.quadrant = std::move(qw);
  return cert;
}

namespace {

void require_mode_range(const Expr& x1, const Expr& x2, UnaryMode mode, bool strict, int max_bits) {
  const bool variable = mode == UnaryMode::Variable;
  const Expr& top = variable ? kHalf : kTenth;
  const int order = compare_values(x1, x2, max_bits);
  const bool ok = compare_values(x1, 0, max_bits) > 0 && (strict ? order < 0 : order <= 0) &&
                  (variable ? compare_values(x2, top, max_bits) <= 0 : compare_values(x2, top, max_bits) < 0);
  if (!ok)
    throw RangeError(std::string(variable ? "variable" : "fixed") + " mode needs 0 < x1 " + (strict ? "<" : "<=") +
                     " x2 " + (variable ? "<= 1/2" : "< 1/10") + ", got x1 = " + x1.to_string() +
                     ", x2 = " + x2.to_string());
}

int step_factor(UnaryMode mode) { return mode == UnaryMode::Variable ? 1 : 3; }

}  // namespace

DriftBounds angle_drift_bounds(const Expr& x1, const Expr& x2, UnaryMode mode, int max_bits) {
  require_mode_range(x1, x2, mode, false, max_bits);
  DriftBounds out;
  if (compare_values(x1, x2, max_bits) == 0) {
    out.drift = 0;
    out.gamma_gap = 0;
    out.drift_enclosure = Enclosure::exact(Rational(0), kLadderStartBits);
    out.gamma_gap_enclosure = out.drift_enclosure;
    out.holds = true;
    out.checks.push_back("equal parameters: both gaps are exactly 0");
    return out;
  }
  ClosedFormCoefficients k1 = closed_form_coeffs(x1);
  ClosedFormCoefficients k2 = closed_form_coeffs(x2);
  const Expr theta_gap = k2.theta - k1.theta;
  out.drift = Expr(step_factor(mode)) * theta_gap;
  out.gamma_gap = k2.gamma - k1.gamma;
  const Expr pi = Expr::pi();

  auto check = [&](const Expr& smaller, const Expr& larger, const std::string& text) {
    const bool ok = certified_sign(larger - smaller, max_bits) == Sign::Positive;
    out.checks.push_back(text + (ok ? ": certified" : ": FAILS"));
    return ok;
  };
  bool ok = check(k1.theta, k2.theta, "theta_x1 < theta_x2");
  if (mode == UnaryMode::Variable) {
    ok &= check(theta_gap, pi / 4, "theta_x2 - theta_x1 < pi/4");
    ok &= check(abs(out.gamma_gap), pi / 9, "|gamma_x2 - gamma_x1| < pi/9");
  } else {
    ok &= check(out.drift, pi / 3, "3(theta_x2 - theta_x1) < pi/3");
    ok &= check(out.drift + out.gamma_gap, Expr(4) * pi / 9, "3(theta_x2 - theta_x1) + gamma_x2 - gamma_x1 < 4pi/9");
  }
  out.holds = ok;
  out.drift_enclosure = eval(out.drift, 128);
  out.gamma_gap_enclosure = eval(out.gamma_gap, 128);
  return out;
}

namespace {

// First m whose next step pushes drift*(m+1) + gap above pi, found on
// rational enclosures with precision raised whenever a step is ambiguous.
unsigned long bracket_scan(const Expr& drift, const Expr& gap, unsigned long scan_cap, int max_bits) {
  Evaluator d_eval(drift), g_eval(gap), p_eval(Expr::pi());
  for (int bits = 64; bits <= max_bits; bits *= 2) {
    const Enclosure d = d_eval.at(bits);
    const Enclosure g = g_eval.at(bits);
    const Enclosure p = p_eval.at(bits);
    if (d.lower.sign() <= 0) continue;
    const Integer bound = (Rational(2) * p.upper / d.lower).ceil() + 1;
    bool ambiguous = false;
    Rational lo = g.lower, hi = g.upper;
    for (unsigned long m = 0; m <= scan_cap; ++m) {
      if (Integer(static_cast<unsigned long>(m)) > bound)
        throw std::logic_error("bracket scan passed its stopping bound");
      lo += d.lower;
      hi += d.upper;
      if (hi <= p.lower) continue;
      if (lo > p.upper) return m;
      ambiguous = true;
      break;
    }
    if (!ambiguous)
      throw ScanBudgetExhausted("no bracket within the scan cap of " + std::to_string(scan_cap));
  }
  throw PrecisionExhausted("bracket step undecided at " + std::to_string(max_bits) + " bits", false);
}

Expr witness_angle(const ClosedFormCoefficients& k, unsigned long n, UnaryMode mode) {
  return Expr(static_cast<long>(step_factor(mode)) * static_cast<long>(n)) * k.theta + k.gamma;
}

}  // namespace

WitnessCertificate unary_pfa_witness(const Expr& x1, const Expr& x2, UnaryMode mode, unsigned long scan_cap,
                                     int max_bits) {
  require_mode_range(x1, x2, mode, true, max_bits);
  UnaryScan scan;
  scan.mode = mode;
  scan.bounds = angle_drift_bounds(x1, x2, mode, max_bits);
  const std::array<ClosedFormCoefficients, 2> k{closed_form_coeffs(x1), closed_form_coeffs(x2)};
  const Expr& drift = scan.bounds.drift;
  const Expr& gap = scan.bounds.gamma_gap;
  const Expr pi = Expr::pi();

  const unsigned long m = bracket_scan(drift, gap, scan_cap, max_bits);
  scan.bracket_m = m;
  const Expr before = Expr(static_cast<long>(m)) * drift + gap;
  const Expr after = Expr(static_cast<long>(m + 1)) * drift + gap;
  if (certified_sign(pi - before, max_bits) != Sign::Positive || certified_sign(after - pi, max_bits) != Sign::Positive ||
      certified_sign(Expr(2) * pi - after, max_bits) != Sign::Positive)
    throw std::logic_error("bracket condition fails to certify at m = " + std::to_string(m));

  auto signs_at = [&](unsigned long n) {
    return std::array<Sign, 2>{certified_sign(cos(witness_angle(k[0], n, mode)), max_bits),
                               certified_sign(cos(witness_angle(k[1], n, mode)), max_bits)};
  };
  scan.bracket_signs = signs_at(m + 1);
  unsigned long n = m + 1;
  scan.witness_signs = scan.bracket_signs;
  if (scan.bracket_signs[0] == scan.bracket_signs[1]) {
    scan.fallback_used = true;
    for (n = 1;; ++n) {
      if (n > scan_cap) throw ScanBudgetExhausted("no length with opposite signs up to " + std::to_string(scan_cap));
      scan.witness_signs = signs_at(n);
      if (scan.witness_signs[0] != scan.witness_signs[1]) break;
    }
  }
  scan.witness_length = n;

  WitnessCertificate cert;
  cert.family = mode == UnaryMode::Variable ? "pfa-unary" : "pfa-unary-fixed";
  cert.max_bits = max_bits;
  cert.unary = true;
  cert.unary_length = n;
  for (std::size_t i = 0; i < 2; ++i) {
    const Expr& x = i == 0 ? x1 : x2;
    scan.cosine_enclosures[i] = certify_sign(cos(witness_angle(k[i], n, mode)), max_bits).enclosure;
    if (mode == UnaryMode::Variable)
      cert.acceptors.emplace_back(unary_pfa_Bx(x, max_bits), cutpoint_lambda(x), max_bits);
    else
      cert.acceptors.emplace_back(qprime_pfa(x, max_bits), kHalf, max_bits);
    cert.decisions[i] = decide(cert.acceptors[i], '0', n, max_bits);
    if (cert.decisions[i].member != (scan.witness_signs[i] == Sign::Positive))
      throw std::logic_error("simulated verdict disagrees with the cosine sign at length " + std::to_string(n));
  }
  cert.precision_bits = max_precision(cert.decisions);
  const std::string angle = mode == UnaryMode::Variable ? "n*theta + gamma" : "3n*theta + gamma";
  if (!scan.fallback_used) {
    cert.derivation = "bracket m = " + std::to_string(m) + "; cos(" + angle + ") has opposite signs at n = m + 1";
  } else {
    cert.derivation = "bracket m = " + std::to_string(m) + " gives equal signs at n = m + 1; shortest n with opposite "
                      "signs of cos(" + angle + ") is " + std::to_string(n);
  }
  cert.scan = std::move(scan);
  return cert;
}

}  // namespace cutpoint
