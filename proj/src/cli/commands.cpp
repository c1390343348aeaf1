#include "cutpoint/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "cutpoint/claims.hpp"
#include "cutpoint/cli/report.hpp"
#include "cutpoint/cli/spec_format.hpp"
#include "cutpoint/constructions.hpp"
#include "cutpoint/separation.hpp"

namespace cutpoint::cli {

namespace {

struct GlobalOptions {
  int precision_bits = 256;
  int max_bits = kDefaultMaxBits;
  unsigned long scan_cap = kDefaultScanCap;
  std::string format = "text";
};

// Thrown for bad option combinations that CLI11 cannot express.
class UsageError : public Error {
 public:
  using Error::Error;
};

Quadratic literal_option(const std::string& name, const std::string& text) {
  try {
    return parse_literal(text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(name + ": " + e.message(), e.line(), e.column());
  }
}

Expr expr_option(const std::string& name, const std::string& text) { return Expr(literal_option(name, text)); }

IrrationalParam param_option(const std::string& name, const std::string& text) {
  return IrrationalParam::quadratic(literal_option(name, text));
}

struct SpecSource {
  std::string text;
  std::string file;

  std::string load() const {
    if (!text.empty() && !file.empty()) throw UsageError("give either --spec or --spec-file, not both");
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read spec file '" + file + "'");
      std::ostringstream s;
      s << in.rdbuf();
      return s.str();
    }
    if (text.empty()) throw UsageError("an automaton is required (--spec or --spec-file)");
    return text;
  }
};

void add_spec_options(CLI::App* cmd, SpecSource& src) {
  cmd->add_option("--spec", src.text, "Automaton spec, e.g. \"pfa rabin\"");
  cmd->add_option("--spec-file", src.file, "File holding an automaton spec");
}

struct WordInput {
  std::string word;
  long length = -1;
  bool has_word = false;

  bool unary() const { return length >= 0; }
  std::string describe() const { return unary() ? "0^" + std::to_string(length) : word; }
};

void add_word_options(CLI::App* cmd, WordInput& w) {
  cmd->add_option("--word", w.word, "Input word (empty word if omitted)");
  cmd->add_option("--length", w.length, "Unary input length, instead of --word")->check(CLI::NonNegativeNumber);
}

Expr run_probability(const AnyAutomaton& a, const WordInput& w) {
  if (w.unary()) {
    if (!w.word.empty()) throw UsageError("give either --word or --length, not both");
    const std::string& sigma = base(a).alphabet();
    if (sigma.size() != 1) throw UsageError("--length needs a unary automaton");
    return accept_prob(a, sigma[0], static_cast<unsigned long>(w.length));
  }
  return accept_prob(a, w.word);
}

std::string verdict_text(bool member) { return member ? "member" : "non-member"; }

nlohmann::ordered_json certificate_json(const WitnessCertificate& cert, const std::array<std::string, 2>& specs,
                                        int precision_bits) {
  nlohmann::ordered_json j;
  j["family"] = cert.family;
  j["witness"] = cert.witness_text();
  if (cert.unary) j["length"] = std::to_string(cert.unary_length);
  nlohmann::ordered_json automata = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    nlohmann::ordered_json a;
    a["spec"] = specs[i];
    a["cutpoint"] = format_value(cert.acceptors[i].cutpoint(), precision_bits);
    const MembershipDecision& d = cert.decisions[i];
    a["probability"] = d.enclosure.is_exact() ? d.enclosure.lower.to_string() : d.enclosure.to_string();
    a["verdict"] = verdict_text(d.member);
    automata.push_back(std::move(a));
  }
  j["automata"] = std::move(automata);
  j["precision_bits"] = std::to_string(cert.precision_bits);
  j["derivation"] = cert.derivation;
  if (cert.quadrant) {
    const QuadrantWitness& q = *cert.quadrant;
    nlohmann::ordered_json qj;
    qj["j"] = std::to_string(q.digits.j);
    qj["digits"] = std::to_string(q.digits.alpha_jm2) + std::to_string(q.digits.alpha_jm1) + " / alpha_j=" +
                   std::to_string(q.digits.alpha_j) + " beta_j=" + std::to_string(q.digits.beta_j);
    qj["quadrant"] = std::to_string(q.quadrant);
    qj["remainder_alpha"] = q.remainder_alpha_enclosure.to_string();
    qj["remainder_beta"] = q.remainder_beta_enclosure.to_string();
    qj["expected"] = verdict_text(q.expected_alpha_member) + ", " + verdict_text(q.expected_beta_member);
    j["quadrant"] = std::move(qj);
  }
  if (cert.scan) {
    const UnaryScan& s = *cert.scan;
    nlohmann::ordered_json sj;
    sj["mode"] = to_string(s.mode);
    sj["bracket_m"] = std::to_string(s.bracket_m);
    sj["bracket_signs"] = to_string(s.bracket_signs[0]) + ", " + to_string(s.bracket_signs[1]);
    sj["fallback_used"] = s.fallback_used ? "yes" : "no";
    sj["witness_signs"] = to_string(s.witness_signs[0]) + ", " + to_string(s.witness_signs[1]);
    sj["cos_1"] = s.cosine_enclosures[0].to_string();
    sj["cos_2"] = s.cosine_enclosures[1].to_string();
    sj["drift"] = s.bounds.drift_enclosure.to_string();
    sj["gamma_gap"] = s.bounds.gamma_gap_enclosure.to_string();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const std::string& c : s.bounds.checks) checks.push_back(c);
    sj["bound_checks"] = std::move(checks);
    j["scan"] = std::move(sj);
  }
  j["replay"] = cert.replay() ? "ok" : "FAILED";
  return j;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cutpoint automata: simulation, oracles and certified separation witnesses", "cutpoint"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--precision-bits", g.precision_bits, "Enclosure precision for printed values")
      ->capture_default_str()
      ->check(CLI::Range(8, 1 << 20));
  app.add_option("--max-bits", g.max_bits, "Precision budget for certified decisions")
      ->capture_default_str()
      ->check(CLI::Range(32, 1 << 20));
  app.add_option("--scan-cap", g.scan_cap, "Largest length tried by unary witness scans")->capture_default_str();
  app.add_option("--format", g.format, "Report format")->capture_default_str()->check(CLI::IsMember({"text", "json"}));

  std::function<void(Report&)> action;
  std::string command_name;

  // prob
  SpecSource prob_spec;
  WordInput prob_word;
  CLI::App* prob = app.add_subcommand("prob", "Acceptance probability of a word");
  add_spec_options(prob, prob_spec);
  add_word_options(prob, prob_word);
  prob->callback([&] {
    command_name = "prob";
    action = [&](Report& r) {
      const std::string text = prob_spec.load();
      r.input("spec", text);
      r.input("word", prob_word.describe());
      const AnyAutomaton a = build_automaton(parse_spec(text, g.max_bits), g.max_bits);
      const Expr p = run_probability(a, prob_word);
      r.outputs()["probability"] = format_value(p, g.precision_bits);
      r.outputs()["exact"] = p.is_rational() ? "yes" : "no";
    };
  });

  // member
  SpecSource member_spec;
  WordInput member_word;
  std::string member_cut;
  CLI::App* mem = app.add_subcommand("member", "Certified cutpoint membership of a word");
  add_spec_options(mem, member_spec);
  add_word_options(mem, member_word);
  mem->add_option("--cutpoint", member_cut, "Cutpoint in [0, 1)")->required();
  mem->callback([&] {
    command_name = "member";
    action = [&](Report& r) {
      const std::string text = member_spec.load();
      r.input("spec", text);
      r.input("word", member_word.describe());
      r.input("cutpoint", member_cut);
      CutpointAcceptor acc(build_automaton(parse_spec(text, g.max_bits), g.max_bits),
                           expr_option("--cutpoint", member_cut), g.max_bits);
      MembershipDecision d =
          decide_probability(run_probability(acc.automaton(), member_word), acc.cutpoint(), g.max_bits);
      r.outputs()["verdict"] = verdict_text(d.member);
      r.outputs()["probability"] = d.enclosure.is_exact() ? d.enclosure.lower.to_string() : d.enclosure.to_string();
      r.outputs()["precision_bits"] = std::to_string(d.precision_bits);
    };
  });

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "Closed-form acceptance probabilities");
  oracle->require_subcommand(1);
  std::string o_word, o_alpha, o_unit, o_x;
  unsigned long o_index = 0;
  CLI::App* o_bin = oracle->add_subcommand("bin-reverse", "bin(reverse w) for a binary word");
  o_bin->add_option("--word", o_word, "Binary word");
  o_bin->callback([&] {
    command_name = "oracle bin-reverse";
    action = [&](Report& r) {
      r.input("word", o_word);
      r.outputs()["value"] = bin_reverse_oracle(o_word).to_string();
    };
  });
  CLI::App* o_cos = oracle->add_subcommand("cos2", "cos^2(j * angle) for a rotation automaton");
  o_cos->add_option("--alpha", o_alpha, "Rotation parameter: angle 2*pi*alpha");
  o_cos->add_option("--unit", o_unit, "Rotation as \"cos, sin\", e.g. \"3/5, 4/5\"");
  o_cos->add_option("--j", o_index, "Input length")->required();
  o_cos->callback([&] {
    command_name = "oracle cos2";
    action = [&](Report& r) {
      if (o_alpha.empty() == o_unit.empty()) throw UsageError("give exactly one of --alpha and --unit");
      RotationAngle angle = fixed_rotation();
      if (!o_alpha.empty()) {
        r.input("alpha", o_alpha);
        angle = RotationAngle::turns(param_option("--alpha", o_alpha));
      } else {
        r.input("unit", o_unit);
        const auto comma = o_unit.find(',');
        if (comma == std::string::npos) throw UsageError("--unit needs \"cos, sin\"");
        const Quadratic c = literal_option("--unit", o_unit.substr(0, comma));
        const Quadratic s = literal_option("--unit", o_unit.substr(comma + 1));
        if (!c.is_rational() || !s.is_rational()) throw RangeError("--unit needs rational coordinates");
        angle = RotationAngle::unit_point(c.rational_part(), s.rational_part());
      }
      r.input("j", std::to_string(o_index));
      r.outputs()["value"] = format_value(qfa_prob_oracle(angle, o_index), g.precision_bits);
    };
  });
  unsigned long o_m = 0;
  for (const char* which : {"eigenform", "primed"}) {
    const bool primed = std::string(which) == "primed";
    CLI::App* sub = oracle->add_subcommand(
        which, primed ? "Closed form of the fixed-cutpoint family at 0^m" : "Closed form of B_x^m(3,1)");
    sub->add_option("--x", o_x, "Parameter x")->required();
    sub->add_option("--m", o_m, "Input length")->required();
    sub->callback([&, primed] {
      command_name = primed ? "oracle primed" : "oracle eigenform";
      action = [&, primed](Report& r) {
        r.input("x", o_x);
        r.input("m", std::to_string(o_m));
        const Expr x = expr_option("--x", o_x);
        const Expr exact = primed ? primed_eigenform_prob(x, o_m) : eigenform_prob(x, o_m);
        const Expr trig = primed ? primed_closed_form_prob(x, o_m) : closed_form_prob(x, o_m);
        r.outputs()["value"] = format_value(exact, g.precision_bits);
        r.outputs()["trigonometric_form"] = format_value(trig, g.precision_bits);
        r.outputs()["cutpoint"] = format_value(primed ? primed_constant_term(x) : cutpoint_lambda(x), g.precision_bits);
      };
    });
  }

  // separate
  CLI::App* separate = app.add_subcommand("separate", "Certified witness that two cutpoint languages differ");
  separate->require_subcommand(1);
  std::string s_lambda, s_a1, s_a2, s_alpha, s_beta, s_x1, s_x2;
  std::size_t s_digits = kDefaultDigitBudget;
  CLI::App* s_bin = separate->add_subcommand("pfa-binary", "Scaled Rabin automata at a shared cutpoint");
  s_bin->add_option("--lambda", s_lambda, "Cutpoint")->required();
  s_bin->add_option("--alpha1", s_a1, "Lower parameter")->required();
  s_bin->add_option("--alpha2", s_a2, "Upper parameter")->required();
  s_bin->callback([&] {
    command_name = "separate pfa-binary";
    action = [&](Report& r) {
      r.input("lambda", s_lambda);
      r.input("alpha1", s_a1);
      r.input("alpha2", s_a2);
      const Expr lambda = expr_option("--lambda", s_lambda);
      const Expr a1 = expr_option("--alpha1", s_a1);
      const Expr a2 = expr_option("--alpha2", s_a2);
      WitnessCertificate cert = scaled_pair_separation(lambda, a1, a2, g.max_bits);
      r.outputs() = certificate_json(
          cert, {"pfa rabin-alpha " + (lambda / a1).to_string(), "pfa rabin-alpha " + (lambda / a2).to_string()},
          g.precision_bits);
    };
  });
  CLI::App* s_qfa = separate->add_subcommand("qfa", "Rotation automata at cutpoint 1/2");
  s_qfa->add_option("--alpha", s_alpha, "First parameter in (0, 1/4)")->required();
  s_qfa->add_option("--beta", s_beta, "Second parameter in (0, 1/4)")->required();
  s_qfa->add_option("--digit-budget", s_digits, "Largest digit index compared")->capture_default_str();
  s_qfa->callback([&] {
    command_name = "separate qfa";
    action = [&](Report& r) {
      r.input("alpha", s_alpha);
      r.input("beta", s_beta);
      const IrrationalParam a = param_option("--alpha", s_alpha);
      const IrrationalParam b = param_option("--beta", s_beta);
      WitnessCertificate cert = qfa_quadrant_witness(a, b, s_digits, g.max_bits);
      r.outputs() = certificate_json(cert, {"qfa rotation " + a.to_string(), "qfa rotation " + b.to_string()},
                                     g.precision_bits);
    };
  });
  for (const char* which : {"pfa-unary", "pfa-unary-fixed"}) {
    const bool fixed = std::string(which) == "pfa-unary-fixed";
    CLI::App* sub = separate->add_subcommand(
        which, fixed ? "Fixed-cutpoint unary automata at cutpoint 1/2" : "Unary automata at their own cutpoints");
    sub->add_option("--x1", s_x1, "Smaller parameter")->required();
    sub->add_option("--x2", s_x2, "Larger parameter")->required();
    sub->callback([&, fixed] {
      command_name = fixed ? "separate pfa-unary-fixed" : "separate pfa-unary";
      action = [&, fixed](Report& r) {
        r.input("x1", s_x1);
        r.input("x2", s_x2);
        const Expr x1 = expr_option("--x1", s_x1);
        const Expr x2 = expr_option("--x2", s_x2);
        WitnessCertificate cert =
            unary_pfa_witness(x1, x2, fixed ? UnaryMode::Fixed : UnaryMode::Variable, g.scan_cap, g.max_bits);
        const std::string family = fixed ? "pfa qprime " : "pfa bx ";
        r.outputs() = certificate_json(cert, {family + x1.to_string(), family + x2.to_string()}, g.precision_bits);
      };
    });
  }

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run the built-in claims suite");
  bool verify_failed = false;
  verify->callback([&] {
    command_name = "verify";
    action = [&](Report& r) {
      nlohmann::ordered_json claims = nlohmann::ordered_json::array();
      for (const ClaimResult& c : verify_all(g.max_bits)) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["status"] = c.passed ? "PASS" : "FAIL";
        j["cases"] = std::to_string(c.cases);
        j["detail"] = c.detail;
        claims.push_back(std::move(j));
        verify_failed |= !c.passed;
      }
      r.outputs()["claims"] = std::move(claims);
    };
  });

  // table
  SpecSource table_spec;
  std::size_t table_max = 8;
  CLI::App* table = app.add_subcommand("table", "Probabilities of all words up to a length");
  add_spec_options(table, table_spec);
  table->add_option("--max-length", table_max, "Longest word (unary automata: largest exponent)")
      ->capture_default_str();
  table->callback([&] {
    command_name = "table";
    action = [&](Report& r) {
      const std::string text = table_spec.load();
      r.input("spec", text);
      r.input("max_length", std::to_string(table_max));
      const AnyAutomaton a = build_automaton(parse_spec(text, g.max_bits), g.max_bits);
      const std::string& sigma = base(a).alphabet();
      if (sigma.size() > 1 && table_max > 16) throw UsageError("--max-length above 16 needs a unary automaton");
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      std::vector<std::string> words{""};
      for (std::size_t len = 0; len <= table_max; ++len) {
        if (sigma.size() == 1) {
          nlohmann::ordered_json row;
          row["word"] = sigma[0] + std::string("^") + std::to_string(len);
          row["probability"] = format_value(accept_prob(a, sigma[0], len), g.precision_bits);
          rows.push_back(std::move(row));
          continue;
        }
        for (const std::string& w : words) {
          nlohmann::ordered_json row;
          row["word"] = w.empty() ? "<empty>" : w;
          row["probability"] = format_value(accept_prob(a, w), g.precision_bits);
          rows.push_back(std::move(row));
        }
        std::vector<std::string> next;
        for (const std::string& w : words)
          for (char c : sigma) next.push_back(w + c);
        words = std::move(next);
      }
      r.outputs()["rows"] = std::move(rows);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  Report report(command_name);
  const auto start = std::chrono::steady_clock::now();
  try {
    action(report);
  } catch (const PrecisionExhausted& e) {
    err << "certification error: " << e.what() << '\n';
    return kExitCertification;
  } catch (const ScanBudgetExhausted& e) {
    err << "certification error: " << e.what() << '\n';
    return kExitCertification;
  } catch (const DigitBudgetExhausted& e) {
    err << "certification error: " << e.what() << '\n';
    return kExitCertification;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCertification;
  }
  const auto stop = std::chrono::steady_clock::now();
  report.set_elapsed_ms(std::chrono::duration<double, std::milli>(stop - start).count());
  report.write(out, g.format == "json" ? Format::Json : Format::Text);
  return verify_failed ? kExitCertification : kExitOk;
}

}  // namespace cutpoint::cli
