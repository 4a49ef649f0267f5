#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "werner/cli/commands.hpp"

namespace werner::cli {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_negativity_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
  out << "p,n,negativity,classification\n";
  for (const auto& r : rows) {
    out << format_number(r.p) << ',' << r.n << ',' << format_number(r.negativity) << ','
        << r.classification << '\n';
  }
}

void write_chsh_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
  out << "p,n,bell_max,analytic_max,classification\n";
  for (const auto& r : rows) {
    out << format_number(r.p) << ',' << r.n << ',' << format_number(r.bell_max) << ','
        << format_number(r.analytic_max) << ',' << r.classification << '\n';
  }
}

namespace {

double rounded(double x) { return std::stod(format_number(x)); }

nlohmann::json base_record(const SweepRecord& r) {
  return {{"p", rounded(r.p)},
          {"n", r.n},
          {"classification", r.classification},
          {"state_valid", r.state_valid}};
}

}  // namespace

void write_negativity_json(std::ostream& out, const std::vector<SweepRecord>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    auto j = base_record(r);
    j["negativity"] = rounded(r.negativity);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void write_chsh_json(std::ostream& out, const std::vector<SweepRecord>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    auto j = base_record(r);
    j["negativity"] = rounded(r.negativity);
    j["bell_max"] = rounded(r.bell_max);
    j["analytic_max"] = rounded(r.analytic_max);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace werner::cli
