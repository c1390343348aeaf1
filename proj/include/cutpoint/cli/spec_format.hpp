#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cutpoint/automata.hpp"
#include "cutpoint/quadratic.hpp"

namespace cutpoint::cli {

enum class Kind { Pfa, Qfa };

// Textual automaton description.
//
//   pfa rabin
//   pfa rabin-alpha 1/3
//   qfa rotation sqrt(2)/8        (angle 2*pi*alpha)
//   qfa rotation 3/5, 4/5         (cosine, sine)
//   pfa bx 1/4
//   pfa qprime 1/16
//   pfa custom symbols=01 initial=1 accept=2
//   2
//   1 1/2
//   0 1/2
//   1/2 0
//   1/2 1
//
// Parameters are comma-separated literals (rationals, decimals, sqrt of
// rationals). A custom automaton lists n, then one n x n block per symbol.
// '#' starts a comment.
struct AutomatonSpec {
  Kind kind = Kind::Pfa;
  std::string family;
  std::vector<Quadratic> params;

  // custom family only; states are 0-based
  std::string symbols;
  Index initial = 0;
  std::vector<Index> accepting;
  std::vector<std::vector<std::vector<Quadratic>>> matrices;  // [symbol][row][col]

  bool operator==(const AutomatonSpec&) const = default;
};

/// Throws SyntaxError for malformed text and ValidationError (with a
/// "line:column: " prefix) when the described automaton is invalid.
AutomatonSpec parse_spec(std::string_view text, int max_bits = kDefaultMaxBits);

std::string render(const AutomatonSpec& spec);

/// Throws ValidationError, RangeError.
AnyAutomaton build_automaton(const AutomatonSpec& spec, int max_bits = kDefaultMaxBits);

/// Parses a single literal; SyntaxError columns are relative to the literal.
Quadratic parse_literal(std::string_view text);

}  // namespace cutpoint::cli
