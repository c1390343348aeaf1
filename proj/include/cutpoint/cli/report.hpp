#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "cutpoint/scalar_expr.hpp"

namespace cutpoint::cli {

enum class Format { Text, Json };

// Record of one command run. Every number is stored as a string: exact
// values as "p/q", others as "[lo, hi]@bits".
class Report {
 public:
  explicit Report(std::string command);

  void input(const std::string& key, const std::string& value) { data_["inputs"][key] = value; }
  nlohmann::ordered_json& outputs() { return data_["outputs"]; }
  const nlohmann::ordered_json& data() const { return data_; }
  void set_elapsed_ms(double ms);

  /// Text: one "key: value" line per leaf, nested keys joined with '.'.
  void write(std::ostream& out, Format format) const;

 private:
  nlohmann::ordered_json data_;
};

/// Exact rationals as "p/q", everything else as an enclosure at `precision_bits`.
std::string format_value(const Expr& value, int precision_bits);

}  // namespace cutpoint::cli
