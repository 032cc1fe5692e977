#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hq/quantization.hpp"
#include "hq/report.hpp"

namespace hq {

struct SuiteConfig {
  int n = 0;                  // 0: each criterion uses its own n set
  int lmax = 5;
  std::uint64_t samples = 0;  // 0: per-check defaults
  std::uint64_t seed = 42;
  double tol_scale = 1.0;
  bool timestamp_now = false;
  BNorm kernel_b = BNorm::Displayed;
  unsigned workers = 0;
};

const std::vector<std::string>& suite_names();
// Criteria run by a suite; throws std::invalid_argument for unknown names.
std::vector<int> suite_criteria(const std::string& name);

Report run_criterion(int k, const SuiteConfig& cfg);
Report run_suite(const std::string& name, const SuiteConfig& cfg);

json config_json(const SuiteConfig& cfg);
std::string make_timestamp(const SuiteConfig& cfg);

json spectral_table(int n, int lmax);
json constants_table(int n, int l0, int l1);
json kernel_table(int n, int lmax, double norm, BNorm bn);

}  // namespace hq
