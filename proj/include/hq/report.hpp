#pragma once
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace hq {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct Check {
  std::string id;
  std::string paper_ref;
  bool pass = false;
  json value;
  json expected;
  double tolerance = 0.0;
  std::optional<double> stderr_;
};

struct Report {
  std::string suite;
  std::string timestamp;
  json config = json::object();
  std::vector<Check> checks;
  json tables = json::object();
  json diagnostics = json::object();

  Check& add(std::string id, std::string ref, bool pass, json value, json expected, double tol,
             std::optional<double> se = std::nullopt);
  bool all_pass() const;
  std::size_t failures() const;
  void merge(const Report& other);

  json to_json() const;
  std::string to_csv() const;
};

// Checks the structural contract of a serialized report; returns an empty
// string when valid, otherwise a description of the first problem.
std::string validate_report_json(const json& j);

json complex_json(double re, double im);

}  // namespace hq
