#include "cutpoint/cli/spec_format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cutpoint/constructions.hpp"

namespace cutpoint::cli {

namespace {

struct Line {
  std::string text;
  std::size_t number = 0;  // 1-based
};

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line(text.substr(start, end - start));
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) out.push_back({line, number});
    start = end + 1;
  }
  return out;
}

std::vector<Token> split_whitespace(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

Quadratic literal_at(const Token& token, std::size_t line) {
  try {
    return parse_literal(token.text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.message(), line, token.column + e.column() - 1);
  }
}

std::size_t parse_count(const Token& token, std::size_t line, const std::string& what) {
  if (token.text.empty() || !std::all_of(token.text.begin(), token.text.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      }))
    throw SyntaxError("expected " + what + ", got '" + token.text + "'", line, token.column);
  if (token.text.size() > 6) throw SyntaxError(what + " is too large", line, token.column);
  return static_cast<std::size_t>(std::stoul(token.text));
}

[[noreturn]] void invalid(const std::string& message, std::size_t line, std::size_t column) {
  throw ValidationError(std::to_string(line) + ":" + std::to_string(column) + ": " + message);
}

std::size_t expected_params(const std::string& family) {
  if (family == "rabin") return 0;
  return 1;
}

Kind family_kind(const std::string& family) { return family == "rotation" ? Kind::Qfa : Kind::Pfa; }

const std::vector<std::string> kFamilies = {"rabin", "rabin-alpha", "rotation", "bx", "qprime", "custom"};

void parse_custom_header(AutomatonSpec& spec, const std::vector<Token>& tokens, std::size_t line) {
  bool saw_accept = false;
  spec.symbols = "0";
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    const auto eq = t.text.find('=');
    if (eq == std::string::npos) throw SyntaxError("expected key=value, got '" + t.text + "'", line, t.column);
    const std::string key = t.text.substr(0, eq);
    const Token value{t.text.substr(eq + 1), t.column + eq + 1};
    if (key == "symbols") {
      if (value.text.empty()) throw SyntaxError("empty alphabet", line, value.column);
      spec.symbols = value.text;
    } else if (key == "initial") {
      const std::size_t s = parse_count(value, line, "a state number");
      if (s == 0) throw SyntaxError("states are numbered from 1", line, value.column);
      spec.initial = static_cast<Index>(s - 1);
    } else if (key == "accept") {
      saw_accept = true;
      std::size_t pos = 0;
      while (pos < value.text.size()) {
        std::size_t comma = value.text.find(',', pos);
        if (comma == std::string::npos) comma = value.text.size();
        const Token item{value.text.substr(pos, comma - pos), value.column + pos};
        const std::size_t s = parse_count(item, line, "a state number");
        if (s == 0) throw SyntaxError("states are numbered from 1", line, item.column);
        spec.accepting.push_back(static_cast<Index>(s - 1));
        pos = comma + 1;
      }
    } else {
      throw SyntaxError("unknown key '" + key + "'", line, t.column);
    }
  }
  if (!saw_accept) throw SyntaxError("custom automaton needs accept=...", line, tokens[1].column);
}

}  // namespace

Quadratic parse_literal(std::string_view text) { return Quadratic::parse(text); }

AutomatonSpec parse_spec(std::string_view text, int max_bits) {
  const std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) throw SyntaxError("empty automaton spec", 1, 1);
  const Line& head = lines.front();
  const std::vector<Token> tokens = split_whitespace(head.text);

  AutomatonSpec spec;
  if (tokens[0].text == "pfa") {
    spec.kind = Kind::Pfa;
  } else if (tokens[0].text == "qfa") {
    spec.kind = Kind::Qfa;
  } else {
    throw SyntaxError("expected 'pfa' or 'qfa', got '" + tokens[0].text + "'", head.number, tokens[0].column);
  }
  if (tokens.size() < 2) throw SyntaxError("missing family name", head.number, head.text.size() + 1);
  spec.family = tokens[1].text;
  if (std::find(kFamilies.begin(), kFamilies.end(), spec.family) == kFamilies.end())
    throw SyntaxError("unknown family '" + spec.family + "'", head.number, tokens[1].column);
  if (spec.family != "custom" && family_kind(spec.family) != spec.kind)
    throw SyntaxError("family '" + spec.family + "' is a " + (family_kind(spec.family) == Kind::Pfa ? "pfa" : "qfa") +
                          " family",
                      head.number, tokens[0].column);

  std::vector<std::size_t> param_columns;
  if (spec.family == "custom") {
    parse_custom_header(spec, tokens, head.number);
    if (lines.size() < 2) throw SyntaxError("missing state count", head.number + 1, 1);
    const std::vector<Token> count_tokens = split_whitespace(lines[1].text);
    if (count_tokens.size() != 1) throw SyntaxError("expected the state count alone", lines[1].number, 1);
    const std::size_t n = parse_count(count_tokens[0], lines[1].number, "a state count");
    if (n == 0) throw SyntaxError("state count must be positive", lines[1].number, count_tokens[0].column);
    const std::size_t needed = 2 + n * spec.symbols.size();
    if (lines.size() < needed)
      throw SyntaxError("expected " + std::to_string(n * spec.symbols.size()) + " matrix rows",
                        lines.back().number + 1, 1);
    if (lines.size() > needed) throw SyntaxError("unexpected text after the matrices", lines[needed].number, 1);
    std::size_t at = 2;
    for (std::size_t s = 0; s < spec.symbols.size(); ++s) {
      std::vector<std::vector<Quadratic>> m;
      for (std::size_t r = 0; r < n; ++r, ++at) {
        const std::vector<Token> row = split_whitespace(lines[at].text);
        if (row.size() != n)
          throw SyntaxError("expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()),
                            lines[at].number, 1);
        std::vector<Quadratic> entries;
        for (const Token& t : row) entries.push_back(literal_at(t, lines[at].number));
        m.push_back(std::move(entries));
      }
      spec.matrices.push_back(std::move(m));
    }
  } else {
    if (lines.size() > 1) throw SyntaxError("unexpected text after the spec line", lines[1].number, 1);
    // Everything after the family name is a comma-separated parameter list.
    const std::size_t rest = tokens[1].column - 1 + tokens[1].text.size();
    std::size_t pos = rest;
    if (head.text.find_first_not_of(" \t", rest) != std::string::npos) {
      while (true) {
        std::size_t comma = head.text.find(',', pos);
        const std::size_t end = comma == std::string::npos ? head.text.size() : comma;
        std::string piece = head.text.substr(pos, end - pos);
        const std::size_t lead = piece.find_first_not_of(" \t");
        if (lead == std::string::npos) throw SyntaxError("empty parameter", head.number, pos + 1);
        piece.erase(0, lead);
        piece.erase(piece.find_last_not_of(" \t") + 1);
        const Token t{piece, pos + lead + 1};
        spec.params.push_back(literal_at(t, head.number));
        param_columns.push_back(t.column);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    const std::size_t want = expected_params(spec.family);
    const bool rotation_pair = spec.family == "rotation" && spec.params.size() == 2;
    if (spec.params.size() != want && !rotation_pair)
      throw SyntaxError("family '" + spec.family + "' takes " + std::to_string(want) + " parameter" +
                            (want == 1 ? "" : "s") + ", got " + std::to_string(spec.params.size()),
                        head.number, tokens[1].column);
  }

  try {
    build_automaton(spec, max_bits);
  } catch (const ValidationError& e) {
    invalid(e.what(), spec.family == "custom" ? lines[1].number : head.number, 1);
  } catch (const RangeError& e) {
    invalid(e.what(), head.number, param_columns.empty() ? tokens[1].column : param_columns.front());
  }
  return spec;
}

namespace {

std::string compact(const Quadratic& q) {
  std::string s = q.to_string();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

}  // namespace

std::string render(const AutomatonSpec& spec) {
  std::ostringstream out;
  out << (spec.kind == Kind::Pfa ? "pfa" : "qfa") << ' ' << spec.family;
  if (spec.family != "custom") {
    for (std::size_t i = 0; i < spec.params.size(); ++i) out << (i == 0 ? " " : ", ") << spec.params[i].to_string();
    return out.str();
  }
  out << " symbols=" << spec.symbols << " initial=" << spec.initial + 1 << " accept=";
  for (std::size_t i = 0; i < spec.accepting.size(); ++i) out << (i == 0 ? "" : ",") << spec.accepting[i] + 1;
  const std::size_t n = spec.matrices.empty() ? 0 : spec.matrices.front().size();
  out << '\n' << n << '\n';
  for (const auto& m : spec.matrices) {
    for (const auto& row : m) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j == 0 ? "" : " ") << compact(row[j]);
      out << '\n';
    }
  }
  return out.str();
}

AnyAutomaton build_automaton(const AutomatonSpec& spec, int max_bits) {
  const auto param = [&](std::size_t i) { return Expr(spec.params.at(i)); };
  if (spec.family == "rabin") return rabin_pfa();
  if (spec.family == "rabin-alpha") return rabin_alpha_pfa(param(0), max_bits);
  if (spec.family == "bx") return unary_pfa_Bx(param(0), max_bits);
  if (spec.family == "qprime") return qprime_pfa(param(0), max_bits);
  if (spec.family == "rotation") {
    if (spec.params.size() == 2) {
      if (!spec.params[0].is_rational() || !spec.params[1].is_rational())
        throw RangeError("rotation by (cosine, sine) needs rational coordinates");
      return rotation_qfa(
          RotationAngle::unit_point(spec.params[0].rational_part(), spec.params[1].rational_part()), max_bits);
    }
    return rotation_qfa(RotationAngle::turns(IrrationalParam::quadratic(spec.params[0])), max_bits);
  }
  if (spec.family == "custom") {
    std::vector<Matrix> matrices;
    for (const auto& rows : spec.matrices) {
      const Index n = static_cast<Index>(rows.size());
      Matrix m(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = Expr(rows[i][j]);
      matrices.push_back(std::move(m));
    }
    if (spec.kind == Kind::Pfa) return PFA(spec.symbols, std::move(matrices), spec.initial, spec.accepting, max_bits);
    return QFA(spec.symbols, std::move(matrices), spec.initial, spec.accepting, max_bits);
  }
  throw ValidationError("unknown family '" + spec.family + "'");
}

}  // namespace cutpoint::cli
