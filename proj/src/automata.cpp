#include "cutpoint/automata.hpp"

#include <algorithm>

namespace cutpoint {

namespace {

std::string symbol_text(char c) { return std::string("'") + c + "'"; }

// Above this run length, squaring beats repeated matrix-vector products.
constexpr unsigned long kPowerRunThreshold = 8;

StateVector apply_run(const Matrix& m, StateVector state, unsigned long count) {
  if (count >= kPowerRunThreshold) return mat_vec(mat_pow(m, count), state);
  for (unsigned long i = 0; i < count; ++i) state = mat_vec(m, state);
  return state;
}

}  // namespace

Automaton::Automaton(std::string alphabet, std::vector<Matrix> matrices, Index initial,
                     std::vector<Index> accepting, StateKind kind)
    : alphabet_(std::move(alphabet)),
      matrices_(std::move(matrices)),
      initial_(initial),
      accepting_(std::move(accepting)) {
  if (alphabet_.empty()) throw ValidationError("alphabet is empty");
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_.find(alphabet_[i], i + 1) != std::string::npos)
      throw ValidationError("symbol " + symbol_text(alphabet_[i]) + " listed twice");
  if (matrices_.size() != alphabet_.size())
    throw ValidationError(std::to_string(alphabet_.size()) + " symbols but " + std::to_string(matrices_.size()) +
                          " matrices");
  const Index n = matrices_.front().rows();
  if (n < 1) throw ValidationError("automaton needs at least one state");
  for (const Matrix& m : matrices_)
    if (m.rows() != n || m.cols() != n) throw ValidationError("matrices must all be " + std::to_string(n) + "x" +
                                                              std::to_string(n));
  if (initial_ < 0 || initial_ >= n)
    throw ValidationError("initial state " + std::to_string(initial_ + 1) + " out of range 1.." + std::to_string(n));
  std::sort(accepting_.begin(), accepting_.end());
  if (std::adjacent_find(accepting_.begin(), accepting_.end()) != accepting_.end())
    throw ValidationError("accepting state listed twice");
  for (Index s : accepting_)
    if (s < 0 || s >= n)
      throw ValidationError("accepting state " + std::to_string(s + 1) + " out of range 1.." + std::to_string(n));
  exact_ = std::all_of(matrices_.begin(), matrices_.end(), [](const Matrix& m) { return cutpoint::is_exact(m); });
  initial_state_ = StateVector::basis(n, initial_, kind);
}

const Matrix& Automaton::matrix(char symbol) const {
  auto pos = alphabet_.find(symbol);
  if (pos == std::string::npos) throw SymbolError("symbol " + symbol_text(symbol) + " is not in the alphabet");
  return matrices_[pos];
}

bool Automaton::is_accepting(Index state) const {
  return std::binary_search(accepting_.begin(), accepting_.end(), state);
}

StateVector Automaton::final_state(std::string_view word) const {
  for (char c : word) matrix(c);
  StateVector state = initial_state_;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    state = apply_run(matrix(word[i]), std::move(state), j - i);
    i = j;
  }
  return state;
}

StateVector Automaton::final_state(char symbol, unsigned long count) const {
  return apply_run(matrix(symbol), initial_state_, count);
}

PFA::PFA(std::string alphabet, std::vector<Matrix> matrices, Index initial, std::vector<Index> accepting,
         int max_bits)
    : Automaton(std::move(alphabet), std::move(matrices), initial, std::move(accepting), StateKind::Probabilistic) {
  for (std::size_t k = 0; k < this->matrices().size(); ++k)
    if (!is_column_stochastic(this->matrices()[k], max_bits))
      throw ValidationError("matrix for symbol " + symbol_text(this->alphabet()[k]) + " is not column-stochastic");
}

QFA::QFA(std::string alphabet, std::vector<Matrix> matrices, Index initial, std::vector<Index> accepting,
         int max_bits)
    : Automaton(std::move(alphabet), std::move(matrices), initial, std::move(accepting), StateKind::Quantum) {
  for (std::size_t k = 0; k < this->matrices().size(); ++k)
    if (!is_unitary(this->matrices()[k], max_bits))
      throw ValidationError("matrix for symbol " + symbol_text(this->alphabet()[k]) + " is not unitary");
}

namespace {

Expr accepted_mass(const Automaton& a, const StateVector& state) {
  Expr sum;
  for (Index s : a.accepting()) {
    const Expr& e = state[s];
    sum += state.kind() == StateKind::Quantum ? e * e : e;
  }
  return sum;
}

}  // namespace

Expr accept_prob_pfa(const PFA& p, std::string_view word) { return accepted_mass(p, p.final_state(word)); }

Expr accept_prob_qfa(const QFA& q, std::string_view word) { return accepted_mass(q, q.final_state(word)); }

const Automaton& base(const AnyAutomaton& a) {
  return std::visit([](const auto& x) -> const Automaton& { return x; }, a);
}

Expr accept_prob(const AnyAutomaton& a, std::string_view word) {
  const Automaton& b = base(a);
  return accepted_mass(b, b.final_state(word));
}

Expr accept_prob(const AnyAutomaton& a, char symbol, unsigned long count) {
  const Automaton& b = base(a);
  return accepted_mass(b, b.final_state(symbol, count));
}

CutpointAcceptor::CutpointAcceptor(AnyAutomaton automaton, Expr cutpoint, int max_bits)
    : automaton_(std::move(automaton)), cutpoint_(std::move(cutpoint)) {
  const bool in_range = compare_values(cutpoint_, 0, max_bits) >= 0 && compare_values(cutpoint_, 1, max_bits) < 0;
  if (!in_range) throw RangeError("cutpoint " + cutpoint_.to_string() + " is not in [0, 1)");
}

MembershipDecision decide_probability(const Expr& probability, const Expr& cutpoint, int max_bits) {
  SignCertificate cert;
  try {
    cert = certify_sign(probability - cutpoint, max_bits);
  } catch (const PrecisionExhausted& e) {
    if (e.values_equal())
      throw PrecisionExhausted("probability equals cutpoint " + cutpoint.to_string(), true);
    throw PrecisionExhausted("cannot separate probability from cutpoint " + cutpoint.to_string() + " within " +
                                 std::to_string(max_bits) + " bits",
                             false);
  }
  MembershipDecision d;
  d.member = cert.sign == Sign::Positive;
  d.probability = probability;
  d.precision_bits = cert.enclosure.precision_bits;
  d.enclosure = eval(probability, d.precision_bits);
  return d;
}

MembershipDecision decide(const CutpointAcceptor& acc, std::string_view word, int max_bits) {
  return decide_probability(accept_prob(acc.automaton(), word), acc.cutpoint(), max_bits);
}

MembershipDecision decide(const CutpointAcceptor& acc, char symbol, unsigned long count, int max_bits) {
  return decide_probability(accept_prob(acc.automaton(), symbol, count), acc.cutpoint(), max_bits);
}

bool member(const CutpointAcceptor& acc, std::string_view word, int max_bits) {
  return decide(acc, word, max_bits).member;
}

}  // namespace cutpoint
