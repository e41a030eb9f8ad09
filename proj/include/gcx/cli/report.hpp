#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace gcx::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "gcx-report/1";

struct Case {
  std::string id;
  json inputs = json::object();
  json expected = nullptr;
  json computed = json::object();
  std::string status = "pass";  // pass | fail | info

  bool failed() const { return status == "fail"; }
};

inline std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

struct Report {
  json config = json::object();
  std::vector<Case> cases;

  bool failed() const {
    for (const auto& c : cases)
      if (c.failed()) return true;
    return false;
  }

  json to_json() const {
    json j;
    j["version"] = kReportVersion;
    j["config"] = config;
    j["cases"] = json::array();
    for (const auto& c : cases)
      j["cases"].push_back({{"id", c.id}, {"inputs", c.inputs}, {"expected", c.expected}, {"computed", c.computed},
                            {"status", c.status}});
    return j;
  }
};

namespace detail {

inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  out.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace detail

/**
 * Flat CSV view: one row per case, one column per leaf of the case object
 * (dotted paths), columns in order of first appearance. Arrays stay JSON.
 */
inline void write_csv(std::ostream& os, const Report& r) {
  std::vector<std::string> columns;
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  for (const auto& c : r.cases) {
    std::vector<std::pair<std::string, std::string>> row{{"id", c.id}, {"status", c.status}};
    detail::flatten(c.inputs, "inputs", row);
    detail::flatten(c.expected, "expected", row);
    detail::flatten(c.computed, "computed", row);
    for (const auto& [k, v] : row)
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << detail::csv_field(columns[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ",";
      for (const auto& [k, v] : row)
        if (k == columns[i]) {
          os << detail::csv_field(v);
          break;
        }
    }
    os << "\n";
  }
}

}  // namespace gcx::cli
