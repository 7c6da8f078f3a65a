#pragma once

// Verification reports: exact serialization of values and named checks.

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "padic/arith.hpp"
#include "padic/qexp.hpp"
#include "padic/stringy.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return to_string(r); }
inline Json to_json(const BigInt& n) { return n.str(); }

/// Term list [{exponent, coefficient}], exponents ascending.
inline Json to_json(const QExp& e) {
  Json arr = Json::array();
  for (const auto& [ex, c] : e.terms()) arr.push_back({{"exponent", to_string(ex)}, {"coefficient", to_string(c)}});
  return arr;
}

inline Json to_json(const EPoly& e) {
  Json arr = Json::array();
  for (const auto& [k, c] : e.terms())
    arr.push_back({{"x_exponent", to_string(k.first)}, {"y_exponent", to_string(k.second)}, {"coefficient", c.str()}});
  return arr;
}

inline Json to_json(const GroupElement& a) {
  Json arr = Json::array();
  for (auto v : a) arr.push_back(v);
  return arr;
}

struct Check {
  std::string name;
  std::string anchor;
  bool pass = false;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::vector<Check> checks;
  Json precision_used = nullptr;
  double seconds = 0;

  void check(std::string name, std::string anchor, bool pass) {
    checks.push_back({std::move(name), std::move(anchor), pass});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  Json to_json(bool with_timing) const {
    Json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"paper_anchor", c.anchor}, {"pass", c.pass}});
    j["checks"] = cs;
    j["precision_used"] = precision_used;
    j["pass"] = all_pass();
    if (with_timing) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(3) << seconds;
      j["timing_seconds"] = s.str();
    }
    return j;
  }

  std::string to_table(bool with_timing) const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    for (const auto& [k, v] : inputs.items()) out << "  input  " << k << " = " << v.dump() << "\n";
    for (const auto& [k, v] : outputs.items()) out << "  output " << k << " = " << v.dump() << "\n";
    if (!precision_used.is_null()) out << "  precision_used = " << precision_used.dump() << "\n";
    std::size_t width = 4;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    out << std::left << std::setw(static_cast<int>(width) + 2) << "check" << "result  anchor\n";
    for (const auto& c : checks)
      out << std::left << std::setw(static_cast<int>(width) + 2) << c.name << (c.pass ? "PASS    " : "FAIL    ") << c.anchor
          << "\n";
    if (with_timing) out << "time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
    out << (all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
    return out.str();
  }
};

}  // namespace padic
