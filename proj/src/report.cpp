#include "hq/report.hpp"

#include <sstream>

namespace hq {

Check& Report::add(std::string id, std::string ref, bool pass, json value, json expected, double tol,
                   std::optional<double> se) {
  checks.push_back({std::move(id), std::move(ref), pass, std::move(value), std::move(expected), tol, se});
  return checks.back();
}

bool Report::all_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t f = 0;
  for (const auto& c : checks) f += c.pass ? 0 : 1;
  return f;
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  for (const auto& [k, v] : other.tables.items()) tables[k] = v;
  for (const auto& [k, v] : other.diagnostics.items()) diagnostics[k] = v;
}

json Report::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = suite;
  j["timestamp"] = timestamp;
  j["config"] = config;
  json arr = json::array();
  for (const auto& c : checks) {
    json r;
    r["id"] = c.id;
    r["paper_ref"] = c.paper_ref;
    r["status"] = c.pass ? "pass" : "fail";
    r["value"] = c.value;
    r["expected"] = c.expected;
    r["tolerance"] = c.tolerance;
    if (c.stderr_) r["stderr"] = *c.stderr_;
    arr.push_back(std::move(r));
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"total", checks.size()}, {"failed", failures()}};
  j["tables"] = tables;
  j["diagnostics"] = diagnostics;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"') r += '"';
    r += ch;
  }
  return r + "\"";
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "suite,id,paper_ref,status,value,expected,tolerance,stderr\n";
  for (const auto& c : checks) {
    os << csv_field(suite) << ',' << csv_field(c.id) << ',' << csv_field(c.paper_ref) << ','
       << (c.pass ? "pass" : "fail") << ',' << csv_field(scalar_text(c.value)) << ','
       << csv_field(scalar_text(c.expected)) << ',' << json(c.tolerance).dump() << ','
       << (c.stderr_ ? json(*c.stderr_).dump() : "") << '\n';
  }
  return os.str();
}

std::string validate_report_json(const json& j) {
  if (!j.is_object()) return "report is not an object";
  for (const char* k : {"schema_version", "suite", "timestamp", "config", "checks", "tables", "diagnostics"})
    if (!j.contains(k)) return std::string("missing key ") + k;
  if (j["schema_version"] != kSchemaVersion) return "unsupported schema_version";
  if (!j["suite"].is_string() || !j["timestamp"].is_string()) return "suite and timestamp must be strings";
  if (!j["checks"].is_array()) return "checks must be an array";
  for (const auto& c : j["checks"]) {
    for (const char* k : {"id", "paper_ref", "status", "value", "expected", "tolerance"})
      if (!c.contains(k)) return std::string("check record missing ") + k;
    if (!c["id"].is_string() || !c["paper_ref"].is_string()) return "check id and paper_ref must be strings";
    if (c["paper_ref"].get<std::string>().empty()) return "empty paper_ref in " + c["id"].get<std::string>();
    if (c["status"] != "pass" && c["status"] != "fail") return "status must be pass or fail";
    if (!c["tolerance"].is_number()) return "tolerance must be a number";
    if (c.contains("stderr") && !c["stderr"].is_number()) return "stderr must be a number";
  }
  return {};
}

json complex_json(double re, double im) { return json::array({re, im}); }

}  // namespace hq
