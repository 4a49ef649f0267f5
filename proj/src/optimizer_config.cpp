#include <istream>
#include <sstream>
#include <string>

#include "werner/cli/commands.hpp"

namespace werner::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_value(const std::string& key, const std::string& text, int line) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) {
    std::ostringstream msg;
    msg << "config line " << line << ": bad value '" << text << "' for " << key;
    throw ValidationError(msg.str());
  }
  return value;
}

}  // namespace

OptimizerSettings read_optimizer_config(std::istream& in, OptimizerSettings base) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "config line " << line << ": expected key = value";
      throw ValidationError(msg.str());
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "theta_divisions") {
      base.theta_divisions = parse_value<int>(key, value, line);
    } else if (key == "psi_divisions") {
      base.psi_divisions = parse_value<int>(key, value, line);
    } else if (key == "seeds") {
      base.seeds = parse_value<int>(key, value, line);
    } else if (key == "max_evaluations") {
      base.max_evaluations = parse_value<int>(key, value, line);
    } else if (key == "tolerance") {
      base.tolerance = parse_value<double>(key, value, line);
    } else {
      std::ostringstream msg;
      msg << "config line " << line << ": unknown key '" << key << "'";
      throw ValidationError(msg.str());
    }
  }
  return base;
}

}  // namespace werner::cli
