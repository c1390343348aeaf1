#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutpoint/automata.hpp"
#include "cutpoint/constructions.hpp"
#include "cutpoint/irrational_param.hpp"

namespace cutpoint {

inline constexpr unsigned long kDefaultScanCap = 1000000;
inline constexpr std::size_t kDefaultDigitBudget = 60;

struct DigitContext {
  IrrationalParam alpha;
  IrrationalParam beta;
  std::size_t j = 0;  // first index with alpha_j != beta_j
  int alpha_jm2 = 0;
  int alpha_jm1 = 0;
  int alpha_j = 0;
  int beta_j = 0;
};

struct QuadrantWitness {
  DigitContext digits;
  unsigned long input_length = 0;  // 2^(j-3)
  Expr reduced_alpha{};              // angle of the alpha automaton after input_length steps, mod 2*pi
  Expr reduced_beta{};
  Expr remainder_alpha{};  // reduced angle minus its multiple of pi/4, in (0, pi/4)
  Expr remainder_beta{};
  Enclosure remainder_alpha_enclosure{};
  Enclosure remainder_beta_enclosure{};
  int quadrant = 0;  // 1..4
  bool expected_alpha_member = false;
  bool expected_beta_member = false;
};

enum class UnaryMode { Variable, Fixed };

std::string to_string(UnaryMode mode);

struct DriftBounds {
  Expr drift;      // k * (theta_x2 - theta_x1), k = 1 (variable) or 3 (fixed)
  Expr gamma_gap;  // gamma_x2 - gamma_x1
  Enclosure drift_enclosure;
  Enclosure gamma_gap_enclosure;
  bool holds = false;  // all stated strict bounds certified
  std::vector<std::string> checks;
};

struct UnaryScan {
  UnaryMode mode = UnaryMode::Variable;
  unsigned long bracket_m = 0;  // drift*m + gap <= pi < drift*(m+1) + gap < 2*pi
  std::array<Sign, 2> bracket_signs{};
  bool fallback_used = false;
  unsigned long witness_length = 0;
  std::array<Sign, 2> witness_signs{};
  std::array<Enclosure, 2> cosine_enclosures;  // at the witness length
  DriftBounds bounds;
};

// Evidence that two cutpoint languages differ: a word with certified
// probabilities on opposite sides of the cutpoints.
struct WitnessCertificate {
  std::string family;
  std::vector<CutpointAcceptor> acceptors;  // exactly two
  std::string word;                         // binary witness, empty for unary ones
  bool unary = false;
  unsigned long unary_length = 0;
  std::array<MembershipDecision, 2> decisions;
  int precision_bits = 0;  // largest deciding precision of the two
  int max_bits = kDefaultMaxBits;
  std::string derivation;
  std::optional<QuadrantWitness> quadrant;
  std::optional<UnaryScan> scan;

  /// "0^n" for unary witnesses.
  std::string witness_text() const;
  /// Re-simulates both automata on the witness and checks that the verdicts
  /// reproduce and differ.
  bool replay() const;
};

/// Shortest binary z (then smallest bin(reverse z)) with lo < bin(reverse z) < hi.
/// Throws RangeError unless 0 <= lo < hi <= 1.
std::string find_density_witness(const Expr& lo, const Expr& hi, int max_bits = kDefaultMaxBits);

/// Separates the scaled Rabin automata P_{lambda/alpha1} and P_{lambda/alpha2}
/// at cutpoint lambda. Throws RangeError unless 0 < lambda < alpha1 < alpha2 < 1.
WitnessCertificate scaled_pair_separation(const Expr& lambda, const Expr& alpha1, const Expr& alpha2,
                                          int max_bits = kDefaultMaxBits);

/// Throws RangeError for parameters not in (0, 1/4) and DigitBudgetExhausted
/// when the digits agree up to max_index.
DigitContext first_diff_digit(const IrrationalParam& alpha, const IrrationalParam& beta,
                              std::size_t max_index = kDefaultDigitBudget);

/// Separates the rotation automata of two irrational parameters in (0, 1/4)
/// at cutpoint 1/2 with the unary input of length 2^(j-3).
WitnessCertificate qfa_quadrant_witness(const IrrationalParam& alpha, const IrrationalParam& beta,
                                        std::size_t max_index = kDefaultDigitBudget,
                                        int max_bits = kDefaultMaxBits);

/// Throws RangeError unless 0 < x1 <= x2 within the mode's range.
DriftBounds angle_drift_bounds(const Expr& x1, const Expr& x2, UnaryMode mode, int max_bits = kDefaultMaxBits);

/// Separates Q_{x1}, Q_{x2} at cutpoints lambda_{x1}, lambda_{x2} (variable
/// mode) or Q'_{x1}, Q'_{x2} at cutpoint 1/2 (fixed mode). Throws RangeError,
/// ScanBudgetExhausted, PrecisionExhausted.
WitnessCertificate unary_pfa_witness(const Expr& x1, const Expr& x2, UnaryMode mode,
                                     unsigned long scan_cap = kDefaultScanCap, int max_bits = kDefaultMaxBits);

}  // namespace cutpoint
