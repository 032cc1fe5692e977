#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "hq/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria runner"};
  int k = 0;
  hq::SuiteConfig cfg;
  bool dump = false;
  app.add_option("--criterion", k, "criterion number")->required()->check(CLI::Range(1, 14));
  app.add_option("--seed", cfg.seed);
  app.add_option("--samples", cfg.samples);
  app.add_flag("--json", dump, "print the full report");
  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  hq::Report rep = hq::run_criterion(k, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << "  value=" << c.value.dump() << " expected=" << c.expected.dump()
              << " tol=" << c.tolerance;
    if (c.stderr_) std::cout << " stderr=" << *c.stderr_;
    std::cout << "  [" << c.paper_ref << "]\n";
  }
  if (dump || !rep.all_pass()) std::cout << "diagnostics: " << rep.diagnostics.dump() << '\n';
  std::printf("criterion %d: %zu checks, %zu failed, %.1f s\n", k, rep.checks.size(), rep.failures(), secs);
  return rep.all_pass() ? 0 : 1;
}
