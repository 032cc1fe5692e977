#include "hq/quantization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hq/geometry.hpp"
#include "hq/spectral.hpp"

namespace hq {

namespace {

const double kPi = std::numbers::pi;
const double kLog2 = std::numbers::ln2;
const double kLogPi = std::log(std::numbers::pi);

double lg(double x) { return log_gamma(x); }

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
}

void check_nl(int n, double l) {
  check_n(n);
  if (l < 0) throw std::invalid_argument("l must be nonnegative");
}

double log_abs_bH(int n) { return std::log(std::abs(stated_constants(n).b_H)); }
double log_aH(int n) { return std::log(stated_constants(n).a_H); }
double log_abs_bS(int n) { return std::log(std::abs(stated_constants(n).b_S)); }

double sum_quarter_gammas(int n, double l) {
  double s = 0.0;
  for (int k = 2; k <= 5; ++k) s += lg(l + (6.0 * n + k) / 4.0);
  return s;
}

cd cpow(cd z, int l) {
  cd r = 1.0;
  for (int i = 0; i < l; ++i) r *= z;
  return r;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed ^ splitmix64(tag)); }

void check_growth(const FiberFunction& g, int growth_bound) {
  if (growth_bound < 0 || growth_bound > 64) throw std::invalid_argument("growth bound must lie in [0, 64]");
  if (g.empty()) throw std::invalid_argument("fiber function has no pieces");
  for (const auto& piece : g)
    if (piece.degree < 0 || piece.degree > growth_bound)
      throw std::invalid_argument("fiber function grows faster than the declared bound");
}

// Radial weight of T on a degree-d piece, including the angular sphere volume.
double T_weight(int n, int d) {
  return std::exp(0.5 * log_abs_bH(n) + 0.75 * kLog2 + log_gamma_radial(2.0 * d + 4.0 * n, 2.0 * kPi) +
                  log_vol_sphere(4 * n - 1));
}

double TS_weight(int n, int d) {
  return std::exp(0.5 * log_abs_bS(n) - 0.5 * kLog2 + log_gamma_radial(2.0 * d + 4.0 * n + 1.5, 2.0 * kPi) +
                  log_vol_sphere(4 * n + 2));
}

HVector unit_normal_to(const HVector& p, Rng& rng) {
  HVector w(p.size());
  for (auto& q : w)
    for (double& v : q.x) v = rng.normal();
  w = axpy(-e_inner(w, p), p, w);
  return axpy(1.0 / e_norm(w) - 1.0, w, w);
}

// A_ω = τ_H(α(p, ω)) for p uniform and ω unit horizontal; ‖A_ω‖ = 2√2.
CMatrix fiber_sample(int n, Rng& rng) {
  HVector p = random_unit_hvector(n, rng);
  return tau_H_of_ES0(p, random_horizontal(p, rng));
}

double f_moment(const HVector& p) {
  const Quaternion& a = p[0];
  const Quaternion& b = p[1];
  const double d = a.norm2() - b.norm2();
  double dot = 0.0;
  for (int k = 0; k < 4; ++k) dot += a.x[k] * b.x[k];
  return d * d + 4.0 * dot * dot;
}

double log_b_for(int n, int l, BNorm bn) { return bn == BNorm::Displayed ? log_b_l(n, l) : log_b_l_chain(n, l); }

}  // namespace

double weight_pairGG(const CMatrix& a) {
  const int n = static_cast<int>(a.rows() / 2) - 1;
  check_n(n);
  const double f = a.norm();
  return std::exp(-2.0 * std::pow(2.0, 0.25) * kPi * std::sqrt(f)) * std::sqrt(stated_constants(n).a_H) *
         std::pow(f, n + 1);
}

double weight_pairFG(const CMatrix& a) {
  const int n = static_cast<int>(a.rows() / 2) - 1;
  check_n(n);
  const double f = a.norm();
  return std::exp(-std::pow(2.0, 0.25) * kPi * std::sqrt(f)) * std::sqrt(std::abs(stated_constants(n).b_H)) *
         std::sqrt(f);
}

double log_vol_P(int n) {
  check_n(n);
  return log_vol_sphere(4 * n + 3) - std::log(2.0 * kPi * kPi);
}

double vol_P(int n) { return std::exp(log_vol_P(n)); }

double log_I_l(int n, double l) {
  check_nl(n, l);
  const double s7 = log_vol_sphere(3) + log_vol_sphere(2) - std::log(16.0) + std::log(2.0 * kPi) + lg(l + 1.0) +
                    lg(1.5) - kLog2 - lg(l + 2.5);
  const double x = n == 1 ? 0.0
                          : log_vol_sphere(4 * n - 5) + lg(2.0 * l + 4.0) + lg(2.0 * n - 2.0) - kLog2 -
                                lg(2.0 * l + 2.0 * n + 2.0);
  return -l * std::log(8.0) - std::log(2.0 * kPi * kPi) + x + s7;
}

double log_b_l(int n, double l) {
  check_nl(n, l);
  return 0.5 * log_aH(n) + (1.0 - 0.5 * n) * kLog2 - (4.0 * l + 3.0) * kLogPi - 2.0 * std::log(2.0 * l + 2.0 * n + 1.0) +
         2.0 * lg(l + 1.0) + 2.0 * lg(l + 2.0) - lg(l + n + 0.5) - lg(l + n + 1.0) - lg(l + 2.0 * n) -
         lg(l + 2.0 * n + 1.0) + sum_quarter_gammas(n, l);
}

double log_b_l_chain(int n, double l) {
  check_nl(n, l);
  return 0.5 * log_aH(n) + 1.5 * (n + 1.0 + 2.0 * l) * kLog2 + log_gamma_radial(6.0 * n + 4.0 * l + 1.0, 4.0 * kPi) +
         log_vol_sphere(4 * n - 1) + log_vol_P(n) + log_I_l(n, l) - log_dim_Hl(n, l);
}

double log_a_l(int n, double l) {
  check_nl(n, l);
  return 0.5 * log_abs_bH(n) + 0.75 * kLog2 - (2.0 * l + 1.5) * kLogPi + lg(l + 1.0) + lg(l + 2.0) +
         lg(l + 2.0 * n + 0.5) - std::log(2.0 * l + 2.0 * n + 1.0) - lg(l + 2.0 * n);
}

double log_a_l_chain(int n, double l) {
  check_nl(n, l);
  return 0.5 * log_abs_bH(n) + 0.75 * kLog2 + log_gamma_radial(2.0 * l + 4.0 * n, 2.0 * kPi) +
         log_vol_sphere(4 * n - 1) + log_vol_P(n) - log_dim_Hl(n, l);
}

double log_c_l(int n, double l) {
  check_nl(n, l);
  const double m = l + 2.0 * n;
  return 0.5 * log_abs_bS(n) - std::log(2.0 * std::sqrt(2.0)) - (2.0 * l + 1.5) * kLogPi + std::log(m + 0.25) +
         std::log(m + 0.75) - 2.0 * std::log(m + 0.5) + lg(l + 1.0) + lg(l + 2.0) + lg(m + 0.25) + lg(m + 0.75) -
         lg(m + 1.0) - lg(m + 0.5);
}

double log_c_l_chain(int n, double l) {
  check_nl(n, l);
  const double m = l + 2.0 * n;
  return 0.5 * log_abs_bS(n) + log_vol_P(n) - log_dim_Hl(n, l) + 0.5 * kLogPi - std::log(4.0) +
         log_vol_sphere(2) + log_vol_sphere(4 * n - 1) - std::log(m + 0.5) + lg(m) - lg(m + 0.5) - 0.5 * kLog2 +
         log_gamma_radial(2.0 * l + 4.0 * n + 1.5, 2.0 * kPi);
}

double log_T_norm(int n, double l) { return log_a_l(n, l) - 0.5 * log_b_l(n, l); }

double log_T_norm_display(int n, double l) {
  check_nl(n, l);
  const double m = l + 2.0 * n;
  return 0.5 * log_abs_bH(n) - 0.25 * log_aH(n) + 0.25 * (n + 1.0) * kLog2 + lg(m + 0.5) - lg(m) +
         0.5 * (lg(l + n + 0.5) + lg(l + n + 1.0) + lg(m) + lg(m + 1.0) - sum_quarter_gammas(n, l));
}

double log_ratio(int n, double l) { return log_c_l(n, l) - log_a_l(n, l); }

double log_ratio_display(int n, double l) {
  check_nl(n, l);
  const double m = l + 2.0 * n;
  return 0.5 * (log_abs_bS(n) - log_abs_bH(n)) - 1.25 * kLog2 + std::log(m + 0.25) + std::log(m + 0.75) -
         std::log(m) - std::log(m + 0.5) + lg(m + 0.25) + lg(m + 0.75) - 2.0 * lg(m + 0.5);
}

double I_l(int n, int l) { return std::exp(log_I_l(n, l)); }
double b_l(int n, int l) { return std::exp(log_b_l(n, l)); }
double b_l_semianalytic(int n, int l) { return std::exp(log_b_l_chain(n, l)); }
double a_l(int n, int l) { return std::exp(log_a_l(n, l)); }
double c_l(int n, int l) { return std::exp(log_c_l(n, l)); }
double c_l_chain(int n, int l) { return std::exp(log_c_l_chain(n, l)); }
double T_norm(int n, int l) { return std::exp(log_T_norm(n, l)); }
double T_norm_display(int n, int l) { return std::exp(log_T_norm_display(n, l)); }
double T_norm_limit(int n, double l) { return std::exp(log_T_norm(n, l)); }
double ratio_limit(int n, double l) { return std::exp(log_ratio(n, l)); }

double T_norm_prefactor(int n) {
  StatedConstants c = stated_constants(n);
  return std::sqrt(std::abs(c.b_H)) / std::pow(c.a_H, 0.25) * std::pow(2.0, 0.25 * (n + 1));
}

double log_radial_quadrature(double k, double c, double* rel_err) {
  if (!(k >= 0.0) || !(c > 0.0)) throw std::domain_error("log_radial_quadrature: need k ≥ 0, c > 0");
  const double tp = k / c;
  const double lp = k > 0.0 ? k * std::log(tp) - c * tp : 0.0;
  QuadResult r = quad_halfline([&](double t) {
    if (t <= 0.0) return k > 0.0 ? 0.0 : 1.0;
    return std::exp(k * std::log(t) - c * t - lp);
  });
  if (rel_err) *rel_err = r.error / r.value;
  return std::log(r.value) + lp;
}

QuadResult a_l_quadrature(int n, int l) {
  check_nl(n, l);
  double rel = 0.0;
  const double lr = log_radial_quadrature(2.0 * l + 4.0 * n, 2.0 * kPi, &rel);
  const double v = std::exp(0.5 * log_abs_bH(n) + 0.75 * kLog2 + lr + log_vol_sphere(4 * n - 1) + log_vol_P(n) -
                            log_dim_Hl(n, l));
  return {v, rel * v};
}

QuadResult c_l_quadrature(int n, int l) {
  check_nl(n, l);
  // x = (y, z) ∈ ℝ³ × ℝ^{4n}, |y| = r sin φ, |z| = r cos φ
  const double kr = 2.0 * l + 4.0 * n + 1.5;
  const double c = 2.0 * kPi;
  const double tp = kr / c;
  const double lp = kr * std::log(tp) - c * tp;
  const int ca = 2 * l + 4 * n - 1;
  double inner_err = 0.0;
  QuadResult r = quad_halfline([&](double t) {
    if (t <= 0.0) return 0.0;
    const double radial = std::exp(kr * std::log(t) - c * t - lp) / std::sqrt(2.0);
    QuadResult a = quad_interval_gk(
        [&](double ph) { return radial * std::pow(std::cos(ph), ca) * std::pow(std::sin(ph), 2); }, 0.0, kPi / 2);
    inner_err = std::max(inner_err, a.error / std::max(a.value, 1e-300));
    return a.value;
  });
  const double L = std::exp(std::log(r.value) + lp + log_vol_sphere(2) + log_vol_sphere(4 * n - 1));
  const double v = std::exp(0.5 * log_abs_bS(n) + std::log(L) + log_vol_P(n) - log_dim_Hl(n, l));
  return {v, (r.error / r.value + inner_err) * v};
}

double b_ratio(int n, double l) { return std::exp(log_b_l(n, l) - log_b_l(n, l + 1.0)); }

double b_ratio_bound(int n, double l) {
  check_nl(n, l);
  const double g = 1.0 + 2.0 / (2.0 * l + 3.0);
  const double m = l + 2.0 * n + 1.0;
  return std::pow(kPi, 4) * g * g * m * m / ((l + 1.0) * (l + 1.0) * (l + 2.0) * (l + 2.0));
}

ConstantsRow constants_row(int n, int l) {
  ConstantsRow r;
  r.n = n;
  r.l = l;
  r.I_l = I_l(n, l);
  r.b_l = b_l(n, l);
  r.a_l = a_l(n, l);
  r.c_l = c_l(n, l);
  r.T_norm = T_norm(n, l);
  r.ratio = std::exp(log_ratio(n, l));
  r.b_l_chain = b_l_semianalytic(n, l);
  r.a_l_quad = a_l_quadrature(n, l).value;
  r.c_l_quad = c_l_quadrature(n, l).value;
  r.c_l_chain = c_l_chain(n, l);
  r.T_norm_display = T_norm_display(n, l);
  r.ratio_display = std::exp(log_ratio_display(n, l));
  return r;
}

cd HlFunction::operator()(const HVector& p) const {
  cd s = 0.0;
  for (std::size_t j = 0; j < gens.size(); ++j) s += coef[j] * cpow(pair_PA(p, gens[j]), l);
  return s;
}

CMatrix random_unit_tEH(int n, Rng& rng) {
  CMatrix a = random_tEH(n, rng);
  return a / a.norm();
}

HlFunction random_Hl_function(int n, int l, int terms, Rng& rng) {
  check_nl(n, l);
  if (terms < 1) throw std::invalid_argument("random_Hl_function: need at least one term");
  HlFunction f;
  f.n = n;
  f.l = l;
  for (int j = 0; j < terms; ++j) {
    f.coef.emplace_back(rng.normal(), rng.normal());
    f.gens.push_back(random_unit_tEH(n, rng));
  }
  return f;
}

FiberFunction Al_image(const HlFunction& phi) {
  const double vp = vol_P(phi.n);
  return {{phi.l, [phi, vp](const CMatrix& a, Rng& rng) {
             HVector p = random_unit_hvector(phi.n, rng);
             return vp * phi(p) * cpow(pair_PA(p, a), phi.l);
           }}};
}

FiberFunction generator(const HVector& u, int l, cd c) {
  return {{l, [u, l, c](const CMatrix& a, Rng&) { return c * cpow(pair_PA(u, a), l); }}};
}

FiberFunction flow_pullback(const FiberFunction& g, int n, double t) {
  FiberFunction r;
  const cd half = std::exp(cd(0.0, -t * (2.0 * n + 1.0)));
  const cd rot = std::exp(cd(0.0, -2.0 * t));
  for (const auto& piece : g) {
    auto ev = piece.eval;
    r.push_back({piece.degree, [ev, half, rot](const CMatrix& a, Rng& rng) { return half * ev(rot * a, rng); }});
  }
  return r;
}

MCEstimate A_l_apply(const HlFunction& phi, const CMatrix& a, const MCConfig& cfg) {
  MCStats st = mc_run(cfg, 2, [&](Rng& rng, double* out) {
    HVector p = random_unit_hvector(phi.n, rng);
    const cd v = phi(p) * cpow(pair_PA(p, a), phi.l);
    out[0] = v.real();
    out[1] = v.imag();
  });
  return st.complex(0, 1, vol_P(phi.n));
}

MCEstimate T_apply(const FiberFunction& g, const HVector& pprime, const MCConfig& cfg, int growth_bound) {
  check_growth(g, growth_bound);
  const int n = static_cast<int>(pprime.size()) - 1;
  check_n(n);
  std::vector<double> w;
  for (const auto& piece : g) w.push_back(T_weight(n, piece.degree));
  MCStats st = mc_run(cfg, 2, [&](Rng& rng, double* out) {
    CMatrix a = tau_H_of_ES0(pprime, random_horizontal(pprime, rng));
    cd v = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) v += w[j] * g[j].eval(a, rng);
    out[0] = v.real();
    out[1] = v.imag();
  });
  return st.complex(0, 1);
}

MCEstimate TS_tilde_apply(const FiberFunction& g, const HVector& pprime, const MCConfig& cfg, int growth_bound) {
  check_growth(g, growth_bound);
  const int n = static_cast<int>(pprime.size()) - 1;
  check_n(n);
  std::vector<double> w;
  for (const auto& piece : g) w.push_back(TS_weight(n, piece.degree));
  const double fiber = vol_sphere(3) / (2.0 * kPi * kPi);
  MCStats st = mc_run(cfg, 2, [&](Rng& rng, double* out) {
    HVector p = right_mul(pprime, random_unit_quaternion(rng));
    // β(τ_S(p, ω)) for ω ⊥ p in ℝ^{4n+4}
    CMatrix a = tau_H_of_ES0(p, unit_normal_to(p, rng));
    cd v = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) v += w[j] * g[j].eval(a, rng);
    out[0] = v.real();
    out[1] = v.imag();
  });
  return st.complex(0, 1, fiber);
}

double S7_moment(int l) {
  if (l < 0) throw std::invalid_argument("S7_moment: l must be nonnegative");
  return std::exp(log_vol_sphere(3) + log_vol_sphere(2) - std::log(16.0) + std::log(2.0 * kPi) + lg(l + 1.0) +
                  lg(1.5) - kLog2 - lg(l + 2.5));
}

std::vector<MCEstimate> I_l_mc_all(int n, int lmax, const MCConfig& cfg) {
  check_nl(n, lmax);
  MCStats st = mc_run(cfg, lmax + 1, [&](Rng& rng, double* out) {
    const double x = f_moment(random_unit_hvector(n, rng)) / 8.0;
    double v = 1.0;
    for (int l = 0; l <= lmax; ++l, v *= x) out[l] = v;
  });
  std::vector<MCEstimate> r;
  for (int l = 0; l <= lmax; ++l) r.push_back(st.real(l, vol_P(n)));
  return r;
}

MCEstimate I_l_mc(int n, int l, const MCConfig& cfg) { return I_l_mc_all(n, l, cfg).back(); }

MCEstimate S7_moment_mc(int l, const MCConfig& cfg) {
  MCStats st = mc_run(cfg, 1, [&](Rng& rng, double* out) { out[0] = std::pow(f_moment(random_unit_hvector(1, rng)), l); });
  return st.real(0, vol_sphere(7));
}

double log_inner_product_factor(int n, int k) {
  check_nl(n, k);
  return 0.5 * log_aH(n) + 1.5 * (n + 1.0) * kLog2 + log_gamma_radial(2.0 * k + 6.0 * n + 1.0, 4.0 * kPi) +
         log_vol_sphere(4 * n - 1) + log_vol_P(n);
}

MCEstimate b_l_mc(int n, int l, const CMatrix& aprime, const MCConfig& cfg, int inner) {
  check_nl(n, l);
  if (inner < 2) throw std::invalid_argument("b_l_mc: need at least two inner samples");
  MCStats st = mc_run(cfg, 2, [&](Rng& rng, double* out) {
    CMatrix a = fiber_sample(n, rng);
    cd s = 0.0;
    double s2 = 0.0, d = 0.0;
    for (int i = 0; i < inner; ++i) {
      HVector p = random_unit_hvector(n, rng);
      const cd phi = cpow(pair_PA(p, aprime), l);
      const cd x = phi * cpow(pair_PA(p, a), l);
      s += x;
      s2 += std::norm(x);
      d += std::norm(phi);
    }
    out[0] = (std::norm(s) - s2) / (inner * (inner - 1.0));
    out[1] = d / inner;
  });
  return st.ratio(0, 1, std::exp(log_inner_product_factor(n, 2 * l) + log_vol_P(n)));
}

MCEstimate pairing_mc(int n, const FiberFunction& f, const FiberFunction& g, const MCConfig& cfg) {
  check_growth(f, 64);
  check_growth(g, 64);
  MCStats st = mc_run(cfg, 2, [&](Rng& rng, double* out) {
    CMatrix a = fiber_sample(n, rng);
    std::vector<cd> fv, gv;
    for (const auto& piece : f) fv.push_back(piece.eval(a, rng));
    for (const auto& piece : g) gv.push_back(piece.eval(a, rng));
    cd v = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        v += std::exp(log_inner_product_factor(n, f[i].degree + g[j].degree)) * fv[i] * std::conj(gv[j]);
    out[0] = v.real();
    out[1] = v.imag();
  });
  return st.complex(0, 1);
}

FlowCheck flow_commutation_check(int n, int l, double t, const MCConfig& cfg) {
  check_nl(n, l);
  FlowCheck fc;
  const double k = 2.0 * l + 2.0 * n + 1.0;
  fc.phase_degree = std::exp(cd(0.0, -t * k));
  fc.phase_spectral = std::exp(cd(0.0, -t * std::sqrt(lambda_l(n, l) + (2.0 * n + 1.0) * (2.0 * n + 1.0))));
  fc.scalar_residual = std::abs(fc.phase_degree - fc.phase_spectral);
  fc.quantum_phase_pi = std::exp(cd(0.0, -kPi * k));

  Rng setup(sub_seed(cfg.seed, 0xF10u), 0);
  HVector u = random_unit_hvector(n, setup);
  HVector pp = random_unit_hvector(n, setup);
  CMatrix a0 = tau_H_of_ES0(pp, random_horizontal(pp, setup));
  fc.classical_return_pi = (std::exp(cd(0.0, -2.0 * kPi)) * a0 - a0).norm() / a0.norm();

  FiberFunction g = generator(u, l);
  FiberFunction pulled = flow_pullback(g, n, t);
  const double w = T_weight(n, l);
  MCStats st = mc_run(cfg, 6, [&](Rng& rng, double* out) {
    CMatrix a = tau_H_of_ES0(pp, random_horizontal(pp, rng));
    const cd lhs = w * pulled[0].eval(a, rng);
    const cd rhs = fc.phase_degree * w * g[0].eval(a, rng);
    const cd d = lhs - rhs;
    out[0] = lhs.real();
    out[1] = lhs.imag();
    out[2] = rhs.real();
    out[3] = rhs.imag();
    out[4] = d.real();
    out[5] = d.imag();
  });
  fc.lhs = st.complex(0, 1);
  fc.rhs = st.complex(2, 3);
  MCEstimate d = st.complex(4, 5);
  fc.operator_residual = std::abs(d.value);
  fc.operator_stderr = d.stderr_;
  return fc;
}

KernelSeries kernel_diag(int n, double norm, int L, BNorm bn, double tail_tol) {
  check_nl(n, L);
  if (!(norm > 0.0)) throw std::invalid_argument("kernel_diag: ‖A‖ must be positive");
  KernelSeries k;
  k.n = n;
  k.L = L;
  k.norm = norm;
  const double lx = std::log(norm);
  double lmax = -INFINITY;
  std::vector<double> lt;
  for (int l = 0; l <= L + 1; ++l) {
    const double lr = log_I_l(n, l) - log_b_for(n, l, bn);
    if (l <= L) k.log_r.push_back(lr);
    lt.push_back(lr + 2.0 * l * lx);
    if (l <= L) lmax = std::max(lmax, lt.back());
  }
  double s = 0.0;
  for (int l = 0; l <= L; ++l) {
    k.terms.push_back(std::exp(lt[l]));
    s += std::exp(lt[l] - lmax);
  }
  k.value = std::exp(lmax) * s;
  k.tail_ratio = norm * norm / 8.0 * b_ratio_bound(n, L + 1);
  if (!(k.tail_ratio < 1.0)) throw std::invalid_argument("kernel_diag: truncation L too small for a tail bound");
  k.tail_bound = std::exp(lt[L + 1]) / (1.0 - k.tail_ratio);
  if (k.tail_bound > tail_tol * k.value)
    throw std::invalid_argument("kernel_diag: truncation L too small for the requested tail tolerance");
  return k;
}

ReproduceCheck kernel_reproduce_check(int n, cd c0, cd c1, const HVector& u, const CMatrix& aprime,
                                      const MCConfig& cfg, BNorm bn) {
  check_n(n);
  const double vp = vol_P(n);
  const double r0 = vp / std::exp(log_b_for(n, 0, bn));
  const double r1 = vp / std::exp(log_b_for(n, 1, bn));
  double M[3];
  for (int k = 0; k < 3; ++k) M[k] = std::exp(log_inner_product_factor(n, k));
  MCStats st = mc_run(cfg, 3, [&](Rng& rng, double* out) {
    CMatrix a = fiber_sample(n, rng);
    HVector p2 = random_unit_hvector(n, rng);
    const cd f0 = c0, f1 = c1 * pair_PA(u, a);
    // conj R_l(A, A′) for l = 0, 1, the P-integral sampled at p2
    const cd k0 = r0;
    const cd k1 = r1 * std::conj(pair_PA(p2, a)) * pair_PA(p2, aprime);
    const cd v = M[0] * f0 * k0 + M[1] * (f1 * k0 + f0 * k1) + M[2] * f1 * k1;
    out[0] = v.real();
    out[1] = v.imag();
    out[2] = M[0] * std::norm(f0) + 2.0 * M[1] * (f0 * std::conj(f1)).real() + M[2] * std::norm(f1);
  });
  ReproduceCheck rc;
  rc.reproduced = st.complex(0, 1);
  rc.norm2 = st.real(2);
  rc.expected = c0 + c1 * pair_PA(u, aprime);
  const double x = aprime.norm();
  int L = 8;
  for (;; L *= 2) {
    try {
      rc.kernel_diag = kernel_diag(n, x, L, bn).value;
      break;
    } catch (const std::invalid_argument&) {
      if (L > 4096) throw;
    }
  }
  rc.bound_lhs = std::norm(rc.expected);
  rc.bound_rhs = rc.kernel_diag * rc.norm2.real();
  return rc;
}

}  // namespace hq
