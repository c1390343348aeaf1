#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cutpoint/linalg.hpp"

namespace cutpoint {

// Shared record of a finite automaton with one square matrix per symbol.
// States are 0-based here; text output uses 1-based numbering.
class Automaton {
 public:
  Index states() const { return initial_state_.dimension(); }
  const std::string& alphabet() const { return alphabet_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  /// Throws SymbolError.
  const Matrix& matrix(char symbol) const;
  Index initial() const { return initial_; }
  const std::vector<Index>& accepting() const { return accepting_; }
  bool is_accepting(Index state) const;
  bool is_exact() const { return exact_; }
  const StateVector& initial_state() const { return initial_state_; }

  /// Run-length groups are powered by squaring, so long unary runs are cheap.
  /// Throws SymbolError.
  StateVector final_state(std::string_view word) const;
  /// State after `count` copies of `symbol`.
  StateVector final_state(char symbol, unsigned long count) const;

 protected:
  Automaton(std::string alphabet, std::vector<Matrix> matrices, Index initial,
            std::vector<Index> accepting, StateKind kind);

 private:
  std::string alphabet_;
  std::vector<Matrix> matrices_;
  Index initial_ = 0;
  std::vector<Index> accepting_;
  bool exact_ = true;
  StateVector initial_state_{Vector(), StateKind::Probabilistic};
};

/// Probabilistic automaton over column-stochastic matrices.
class PFA : public Automaton {
 public:
  /// Throws ValidationError (non-stochastic matrix, bad indices, empty alphabet).
  PFA(std::string alphabet, std::vector<Matrix> matrices, Index initial, std::vector<Index> accepting,
      int max_bits = kDefaultMaxBits);
};

/// Measure-once quantum automaton over real unitary matrices.
class QFA : public Automaton {
 public:
  QFA(std::string alphabet, std::vector<Matrix> matrices, Index initial, std::vector<Index> accepting,
      int max_bits = kDefaultMaxBits);
};

/// f_P(w): total mass on accepting states after reading w left to right.
Expr accept_prob_pfa(const PFA& p, std::string_view word);
/// f_M(w): squared amplitudes summed over accepting states.
Expr accept_prob_qfa(const QFA& q, std::string_view word);

using AnyAutomaton = std::variant<PFA, QFA>;

Expr accept_prob(const AnyAutomaton& a, std::string_view word);
/// Probability of `symbol` repeated `count` times.
Expr accept_prob(const AnyAutomaton& a, char symbol, unsigned long count);
const Automaton& base(const AnyAutomaton& a);

// An automaton paired with a cutpoint in [0, 1); its language is the set of
// words accepted with probability strictly above the cutpoint.
class CutpointAcceptor {
 public:
  /// Throws RangeError unless the cutpoint is certifiably in [0, 1).
  CutpointAcceptor(AnyAutomaton automaton, Expr cutpoint, int max_bits = kDefaultMaxBits);

  const AnyAutomaton& automaton() const { return automaton_; }
  const Expr& cutpoint() const { return cutpoint_; }

 private:
  AnyAutomaton automaton_;
  Expr cutpoint_;
};

struct MembershipDecision {
  bool member = false;
  Expr probability;
  Enclosure enclosure;  // of the probability, at the deciding precision
  int precision_bits = 0;
};

/// Decides probability > cutpoint with certified comparison. Throws
/// PrecisionExhausted when the probability equals the cutpoint
/// (values_equal() set) or the budget runs out.
MembershipDecision decide(const CutpointAcceptor& acc, std::string_view word, int max_bits = kDefaultMaxBits);
MembershipDecision decide(const CutpointAcceptor& acc, char symbol, unsigned long count,
                          int max_bits = kDefaultMaxBits);
MembershipDecision decide_probability(const Expr& probability, const Expr& cutpoint, int max_bits);

bool member(const CutpointAcceptor& acc, std::string_view word, int max_bits = kDefaultMaxBits);

}  // namespace cutpoint
