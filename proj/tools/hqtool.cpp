#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "hq/suites.hpp"

namespace {

using hq::json;

struct Common {
  hq::SuiteConfig cfg;
  std::string format = "json";
  std::string out;
  std::string kernel_b = "displayed";
};

void add_common(CLI::App* sc, Common& c) {
  sc->add_option("--n", c.cfg.n, "quaternionic dimension n (1..4); default per check")->envname("HQ_N");
  sc->add_option("--lmax", c.cfg.lmax, "largest l in tables")->envname("HQ_LMAX");
  sc->add_option("--samples", c.cfg.samples, "Monte Carlo samples per estimate; 0 keeps per-check defaults")->envname("HQ_SAMPLES");
  sc->add_option("--seed", c.cfg.seed, "master seed")->envname("HQ_SEED");
  sc->add_option("--tol-scale", c.cfg.tol_scale, "multiplies every default tolerance")->envname("HQ_TOL_SCALE");
  sc->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->envname("HQ_FORMAT");
  sc->add_option("--out", c.out, "output path (default stdout)")->envname("HQ_OUT");
  sc->add_option("--workers", c.cfg.workers, "worker threads (results do not depend on it)")->envname("HQ_WORKERS");
  sc->add_flag("--timestamp", c.cfg.timestamp_now, "stamp the report with wall-clock time instead of the seed");
  sc->add_option("--kernel-b", c.kernel_b, "b_l normalization for kernel checks: displayed or chain")
      ->check(CLI::IsMember({"displayed", "chain"}))
      ->envname("HQ_KERNEL_B");
}

std::string field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"') r += '"';
    r += ch;
  }
  return r + "\"";
}

std::string table_csv(const json& rows) {
  std::ostringstream os;
  if (!rows.is_array() || rows.empty()) return {};
  bool first = true;
  for (const auto& [k, v] : rows[0].items()) {
    os << (first ? "" : ",") << k;
    first = false;
  }
  os << '\n';
  for (const auto& r : rows) {
    first = true;
    for (const auto& [k, v] : r.items()) {
      os << (first ? "" : ",") << field(v);
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open --out path: " + out);
  f << text;
}

int finish(const hq::Report& rep, const Common& c, const json* csv_table = nullptr) {
  std::string text = c.format == "csv" ? (csv_table ? table_csv(*csv_table) : rep.to_csv()) : rep.to_json().dump(2) + "\n";
  emit(text, c.out);
  return rep.all_pass() ? 0 : 1;
}

std::pair<int, int> parse_range(const std::string& s) {
  static const std::regex re(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw std::invalid_argument("--l-range must look like A..B");
  int a = std::stoi(m[1]), b = std::stoi(m[2]);
  if (b < a) throw std::invalid_argument("--l-range needs A <= B");
  if (b > 100000) throw std::invalid_argument("--l-range upper end must be <= 100000");
  return {a, b};
}

hq::Report constants_report(const Common& c, int l0, int l1) {
  hq::Report rep;
  rep.suite = "constants-table";
  rep.timestamp = hq::make_timestamp(c.cfg);
  rep.config = hq::config_json(c.cfg);
  const int n = c.cfg.n ? c.cfg.n : 1;
  rep.config["l_range"] = {l0, l1};
  json t = hq::constants_table(n, l0, l1);
  const double tol = 1e-8 * c.cfg.tol_scale;
  for (const auto& r : t) {
    const std::string id = "constants.n" + std::to_string(n) + ".l" + std::to_string(r["l"].get<int>());
    auto chk = [&](const std::string& what, const char* a, const char* b, double tl, const std::string& ref) {
      const double x = r[a], y = r[b];
      rep.add(id + "." + what, ref, std::abs(x - y) <= tl * std::abs(y), x, y, tl);
    };
    chk("b_l_vs_semianalytic", "b_l", "b_l_semianalytic", tol, "the constant b_l is expressed as");
    chk("a_l_vs_quadrature", "a_l", "a_l_quadrature", tol, "with a suitable constant");
    chk("c_l_vs_quadrature", "c_l", "c_l_quadrature", tol, "As before, to determine the constant");
    chk("T_norm_vs_display", "T_norm", "T_norm_display", 1e-10 * c.cfg.tol_scale, "The norm of T on");
  }
  rep.tables["constants"] = std::move(t);
  return rep;
}

hq::Report kernel_report(const Common& c, int lmax, double norm) {
  hq::Report rep;
  rep.suite = "kernel-table";
  rep.timestamp = hq::make_timestamp(c.cfg);
  rep.config = hq::config_json(c.cfg);
  rep.config["norm"] = norm;
  const int n = c.cfg.n ? c.cfg.n : 1;
  json t = hq::kernel_table(n, lmax, norm, c.cfg.kernel_b);
  const double v = t["value"], tb = t["tail_bound"];
  rep.add("kernel.tail_certified", "holomorphic on all of the", tb <= 1e-12 * c.cfg.tol_scale * v, tb / v, "<= 1e-12",
          1e-12 * c.cfg.tol_scale);
  rep.tables["kernel"] = std::move(t);
  return rep;
}

hq::Report geometry_report(const Common& c) {
  hq::Report rep = hq::run_suite("geometry", c.cfg);
  json rows = json::array();
  for (const auto& k : rep.checks) {
    std::smatch m;
    static const std::regex nre(R"(\.n(\d+))");
    int n = std::regex_search(k.id, m, nre) ? std::stoi(m[1]) : 0;
    rows.push_back({{"check", k.id}, {"n", n}, {"samples", k.stderr_ ? json(c.cfg.samples ? c.cfg.samples : 400000) : json(nullptr)},
                    {"max_residual", k.value}, {"status", k.pass ? "pass" : "fail"}});
  }
  json consts = json::object();
  for (const auto& [key, val] : rep.diagnostics.items())
    if (key.rfind("constants_n", 0) == 0) consts[key.substr(10)] = val;
  rep.tables["geometry"] = std::move(rows);
  rep.tables["constants"] = std::move(consts);
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hqtool: quaternion projective space quantization checks"};
  app.require_subcommand(1);
  Common c;
  std::string suite, lrange = "0..5";
  double norm = 1.0;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, c);
  verify->add_option("--suite", suite, "suite name")->required()->envname("HQ_SUITE");

  auto* consts = app.add_subcommand("constants", "tabulate I_l, b_l, a_l, c_l, operator norms");
  add_common(consts, c);
  consts->add_option("--l-range", lrange, "A..B")->envname("HQ_L_RANGE");

  auto* kernel = app.add_subcommand("kernel", "diagonal reproducing kernel series");
  add_common(kernel, c);
  kernel->add_option("--norm", norm, "norm of A")->check(CLI::PositiveNumber)->envname("HQ_NORM");

  auto* vg = app.add_subcommand("verify-geometry", "geometry suite with per-check residual table");
  add_common(vg, c);
  auto* vs = app.add_subcommand("verify-spectral", "spectral suite with dims and eigenvalues");
  add_common(vs, c);
  auto* vq = app.add_subcommand("verify-quantization", "quantization oracle suite");
  add_common(vq, c);
  auto* ls = app.add_subcommand("suites", "list suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    c.cfg.kernel_b = c.kernel_b == "chain" ? hq::BNorm::Chain : hq::BNorm::Displayed;
    if (*ls) {
      for (const auto& s : hq::suite_names()) std::cout << s << '\n';
      return 0;
    }
    if (*verify) {
      hq::Report rep = hq::run_suite(suite, c.cfg);
      return finish(rep, c);
    }
    if (*consts) {
      auto [a, b] = parse_range(lrange);
      if (c.cfg.n < 0 || c.cfg.n > 64) throw std::invalid_argument("--n must be in 1..64");
      hq::Report rep = constants_report(c, a, b);
      return finish(rep, c, &rep.tables["constants"]);
    }
    if (*kernel) {
      if (c.cfg.lmax < 1 || c.cfg.lmax > 100000) throw std::invalid_argument("--lmax must be in 1..100000");
      hq::Report rep = kernel_report(c, c.cfg.lmax, norm);
      return finish(rep, c, &rep.tables["kernel"]["terms"]);
    }
    if (*vg) {
      hq::Report rep = geometry_report(c);
      return finish(rep, c, &rep.tables["geometry"]);
    }
    if (*vs) {
      hq::Report rep = hq::run_suite("spectral", c.cfg);
      return finish(rep, c, &rep.tables["spectral"]);
    }
    if (*vq) return finish(hq::run_suite("quantization", c.cfg), c);
  } catch (const std::exception& e) {
    std::cerr << "hqtool: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
