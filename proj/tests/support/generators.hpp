#pragma once

#include <random>

#include "cutpoint/irrational_param.hpp"
#include "cutpoint/quadratic.hpp"

namespace gen {

using cutpoint::IrrationalParam;
using cutpoint::Quadratic;
using cutpoint::Rational;

// An irrational pair in (0, 1/4) whose first differing binary digit is j,
// with prescribed digits at j-2, j-1 and j (for alpha; beta_j = 1 - alpha_j).
struct QuadrantCase {
  IrrationalParam alpha;
  IrrationalParam beta;
  std::size_t j = 0;
  int a_jm2 = 0;
  int a_jm1 = 0;
  int a_j = 0;
  int quadrant() const { return 1 + 2 * a_jm2 + a_jm1; }
  // table row for the quadrant, read with alpha_j = 1; swapped otherwise
  bool alpha_member() const {
    static constexpr bool kAlphaAbove[4] = {false, true, false, true};
    return a_j == 1 ? kAlphaAbove[quadrant() - 1] : !kAlphaAbove[quadrant() - 1];
  }
};

inline QuadrantCase quadrant_case(std::mt19937_64& rng, std::size_t j, int a_jm2, int a_jm1, int a_j) {
  static constexpr long kRadicands[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15};
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kRadicands) - 1);
  // digits 1..j-1 shared; 1 and 2 are zero to stay below 1/4
  Rational prefix(0);
  for (std::size_t k = 3; k + 2 < j; ++k)
    if (bit(rng)) prefix += Rational::pow2(-static_cast<long>(k));
  if (a_jm2) prefix += Rational::pow2(-static_cast<long>(j - 2));
  if (a_jm1) prefix += Rational::pow2(-static_cast<long>(j - 1));
  const Rational step = Rational::pow2(-static_cast<long>(j));
  // tails sqrt(d)/4 * 2^-j lie strictly inside (0, 2^-j)
  auto make = [&](int digit) {
    const Rational base = digit ? prefix + step : prefix;
    return IrrationalParam::quadratic(Quadratic(base, step / Rational(4), kRadicands[pick(rng)]));
  };
  QuadrantCase c{make(a_j), make(1 - a_j), j, a_jm2, a_jm1, a_j};
  return c;
}

/// Uniform rational p/q in the open interval (lo, hi) with q <= max_den.
inline Rational rational_in(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long max_den = 400) {
  std::uniform_int_distribution<long> den(2, max_den);
  for (;;) {
    const long q = den(rng);
    const Rational scaled_lo = lo * Rational(q);
    const Rational scaled_hi = hi * Rational(q);
    const long first = static_cast<long>(scaled_lo.floor().get_si()) + 1;
    const long last = static_cast<long>(scaled_hi.ceil().get_si()) - 1;
    if (first > last) continue;
    const long p = std::uniform_int_distribution<long>(first, last)(rng);
    return Rational(p, q);
  }
}

}  // namespace gen
