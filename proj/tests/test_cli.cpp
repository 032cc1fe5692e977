#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "hq/report.hpp"
#include "hq/suites.hpp"

namespace fs = std::filesystem;
using hq::json;

namespace {

struct Run {
  int code;
  std::string out;
};

std::string tool() {
  const char* t = std::getenv("HQTOOL");
  REQUIRE_MESSAGE(t != nullptr, "HQTOOL must point at the hqtool binary");
  return t;
}

Run run(const std::string& args, const std::string& env = "") {
  const fs::path out = fs::temp_directory_path() / ("hqcli_" + std::to_string(std::rand()) + ".txt");
  const std::string cmd = env + " \"" + tool() + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int st = std::system(cmd.c_str());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  fs::remove(out);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, ss.str()};
}

}  // namespace

TEST_CASE("spectral suite reports the S4 harmonic dimensions") {
  Run r = run("verify --suite spectral --n 1 --lmax 5");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(hq::validate_report_json(j).empty());
  std::vector<long> dims;
  for (const auto& row : j["tables"]["spectral"]) dims.push_back(row["dim"].get<long>());
  CHECK(dims == std::vector<long>{1, 5, 14, 30, 55, 91});
  for (const auto& c : j["checks"]) CHECK(!c["paper_ref"].get<std::string>().empty());
}

TEST_CASE("constants table") {
  Run r = run("constants --n 1 --l-range 0..3");
  json j = json::parse(r.out);
  CHECK(hq::validate_report_json(j).empty());
  REQUIRE(j["tables"]["constants"].size() == 4);
  for (const auto& row : j["tables"]["constants"]) {
    CHECK(row["a_l_oracle_match"] == true);
    CHECK(row["T_norm_display_match"] == true);
  }
  // The displayed b_l and c_l disagree with their oracles, so the run fails.
  CHECK(r.code == 1);
  Run csv = run("constants --n 1 --l-range 0..3 --format csv");
  CHECK(csv.out.rfind("n,l,I_l,b_l,", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 5);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  Run a = run("verify --suite spaces --seed 42");
  Run b = run("verify --suite spaces --seed 42");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["timestamp"] == "seed:42");
  Run c = run("verify --suite spaces --seed 43");
  CHECK(c.out != a.out);
}

TEST_CASE("flags win over environment variables") {
  json e = json::parse(run("verify --suite algebra", "HQ_SEED=7").out);
  CHECK(e["config"]["seed"] == 7);
  json f = json::parse(run("verify --suite algebra --seed 9", "HQ_SEED=7").out);
  CHECK(f["config"]["seed"] == 9);
  json t = json::parse(run("verify --suite algebra", "HQ_TOL_SCALE=2").out);
  CHECK(t["config"]["tol_scale"] == 2.0);
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("verify --suite algebra --format xml").code == 2);
  CHECK(run("verify --suite algebra --n 9").code == 2);
  CHECK(run("verify --suite algebra --tol-scale -1").code == 2);
  CHECK(run("constants --l-range 5..2").code == 2);
  CHECK(run("constants --l-range abc").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("csv and --out") {
  const fs::path p = fs::temp_directory_path() / "hqcli_out.csv";
  Run r = run("verify --suite algebra --format csv --out \"" + p.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(p);
  std::string header;
  std::getline(f, header);
  CHECK(header == "suite,id,paper_ref,status,value,expected,tolerance,stderr");
  fs::remove(p);
}

TEST_CASE("kernel and geometry subcommands") {
  Run k = run("kernel --n 1 --lmax 30 --norm 2");
  CHECK(k.code == 0);
  json j = json::parse(k.out);
  CHECK(j["tables"]["kernel"]["terms"].size() == 31);
  Run bad = run("kernel --n 1 --lmax 1 --norm 40");
  CHECK(bad.code == 2);
}

TEST_CASE("library report helpers") {
  hq::Report rep;
  rep.suite = "x";
  rep.timestamp = "seed:1";
  rep.add("a", "ref", true, 1.0, 1.0, 0.0);
  rep.add("b", "ref, with comma", false, "v", 2.0, 1e-3, 0.5);
  CHECK(rep.failures() == 1);
  CHECK(hq::validate_report_json(rep.to_json()).empty());
  CHECK(rep.to_csv().find("\"ref, with comma\"") != std::string::npos);
  json broken = rep.to_json();
  broken["checks"][0].erase("paper_ref");
  CHECK(!hq::validate_report_json(broken).empty());
  CHECK_THROWS(hq::suite_criteria("bogus"));
  CHECK(hq::suite_criteria("all").size() == 14);
}
