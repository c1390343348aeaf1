#include "cutpoint/cli/report.hpp"

#include <iomanip>
#include <sstream>

namespace cutpoint::cli {

Report::Report(std::string command) {
  data_["command"] = std::move(command);
  data_["inputs"] = nlohmann::ordered_json::object();
  data_["outputs"] = nlohmann::ordered_json::object();
}

void Report::set_elapsed_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << ms;
  data_["elapsed_ms"] = s.str();
}

namespace {

std::string escape_newlines(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n')
      out += "\\n";
    else
      out += c;
  }
  return out;
}

void flatten(std::ostream& out, const std::string& prefix, const nlohmann::ordered_json& node) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(out, prefix.empty() ? key : prefix + "." + key, value);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(out, prefix + "." + std::to_string(i + 1), node[i]);
  } else if (node.is_string()) {
    out << prefix << ": " << escape_newlines(node.get<std::string>()) << '\n';
  } else {
    out << prefix << ": " << node.dump() << '\n';
  }
}

}  // namespace

void Report::write(std::ostream& out, Format format) const {
  if (format == Format::Json) {
    out << data_.dump(2) << '\n';
    return;
  }
  out << "command: " << data_["command"].get<std::string>() << '\n';
  flatten(out, "input", data_["inputs"]);
  flatten(out, "", data_["outputs"]);
  if (data_.contains("elapsed_ms")) out << "elapsed_ms: " << data_["elapsed_ms"].get<std::string>() << '\n';
}

std::string format_value(const Expr& value, int precision_bits) {
  if (auto r = value.rational_value()) return r->to_string();
  return eval(value, precision_bits).to_string();
}

}  // namespace cutpoint::cli
