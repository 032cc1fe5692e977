#pragma once
#include <functional>
#include <vector>

#include "hq/numerics.hpp"
#include "hq/spaces.hpp"

namespace hq {

// Weights on 𝐄̃_H entering the inner product and the pairing that defines T.
double weight_pairGG(const CMatrix& a);
double weight_pairFG(const CMatrix& a);

double log_vol_P(int n);
double vol_P(int n);

// Closed forms, as natural logarithms (all four constants are positive).
double log_I_l(int n, double l);
double log_b_l(int n, double l);           // displayed Gamma product
double log_b_l_chain(int n, double l);     // I_l × radial Γ × volumes / dim H_l
double log_a_l(int n, double l);           // displayed Gamma product
double log_a_l_chain(int n, double l);     // K_l(P₀,P₀) vol(P) / dim H_l
double log_c_l(int n, double l);           // displayed Gamma product
double log_c_l_chain(int n, double l);     // L_l(P,P) vol(P) / dim H_l
double log_T_norm(int n, double l);        // log a_l − ½ log b_l
double log_T_norm_display(int n, double l);
double log_ratio(int n, double l);         // log c_l − log a_l
double log_ratio_display(int n, double l);

double I_l(int n, int l);
double b_l(int n, int l);
double b_l_semianalytic(int n, int l);
double a_l(int n, int l);
double c_l(int n, int l);
double c_l_chain(int n, int l);
double T_norm(int n, int l);
double T_norm_display(int n, int l);
double T_norm_limit(int n, double l = 1e6);
double ratio_limit(int n, double l = 1e6);
// √|b_H| a_H^{−1/4} 2^{(n+1)/4} with the stated constants
double T_norm_prefactor(int n);

// Quadrature oracles.
QuadResult a_l_quadrature(int n, int l);
QuadResult c_l_quadrature(int n, int l);
// log ∫_0^∞ t^k e^{−ct} dt by quadrature, with the integrand rescaled at its peak
double log_radial_quadrature(double k, double c, double* rel_err = nullptr);

// b_l / b_{l+1} and the bound used for kernel tails.
double b_ratio(int n, double l);
double b_ratio_bound(int n, double l);

struct ConstantsRow {
  int n = 0, l = 0;
  double I_l = 0, b_l = 0, a_l = 0, c_l = 0, T_norm = 0, ratio = 0;
  double b_l_chain = 0, a_l_quad = 0, c_l_quad = 0, c_l_chain = 0, T_norm_display = 0, ratio_display = 0;
};
ConstantsRow constants_row(int n, int l);

// Elements of H_l: φ(P) = Σ c_j ⟨P, A_j⟩^l.
struct HlFunction {
  int n = 1, l = 0;
  std::vector<cd> coef;
  std::vector<CMatrix> gens;
  cd operator()(const HVector& p) const;
};
HlFunction random_Hl_function(int n, int l, int terms, Rng& rng);
CMatrix random_unit_tEH(int n, Rng& rng);

// Functions on 𝐄̃_H given as sums of homogeneous pieces. Each piece is an
// unbiased (possibly stochastic) evaluator of a degree-d function.
struct FiberPiece {
  int degree = 0;
  std::function<cd(const CMatrix&, Rng&)> eval;
};
using FiberFunction = std::vector<FiberPiece>;

FiberFunction Al_image(const HlFunction& phi);  // A_l(φ), sampled over P
FiberFunction generator(const HVector& u, int l, cd c = 1.0);  // A ↦ c⟨π(u), A⟩^l
FiberFunction flow_pullback(const FiberFunction& g, int n, double t);  // σ_t^*

MCEstimate A_l_apply(const HlFunction& phi, const CMatrix& a, const MCConfig& cfg);
// T(g)(π(p′)): radial Γ integral per piece × MC over unit horizontal directions.
MCEstimate T_apply(const FiberFunction& g, const HVector& pprime, const MCConfig& cfg, int growth_bound = 64);
// T̃(g)(π(p′)): the sphere operator averaged over the Hopf fiber (2π² normalization).
MCEstimate TS_tilde_apply(const FiberFunction& g, const HVector& pprime, const MCConfig& cfg,
                          int growth_bound = 64);

MCEstimate I_l_mc(int n, int l, const MCConfig& cfg);
std::vector<MCEstimate> I_l_mc_all(int n, int lmax, const MCConfig& cfg);
MCEstimate S7_moment_mc(int l, const MCConfig& cfg);
double S7_moment(int l);
// Defining relation ⟨A_lφ, A_lφ⟩ = b_l ⟨φ, φ⟩ with φ = ⟨·, A′⟩^l.
MCEstimate b_l_mc(int n, int l, const CMatrix& aprime, const MCConfig& cfg, int inner = 8);

// M(k) with ⟨f, g⟩ = Σ M(d_f + d_g) E_{p,ω}[f(A_ω) conj g(A_ω)], ‖A_ω‖ = 2√2.
double log_inner_product_factor(int n, int k);
MCEstimate pairing_mc(int n, const FiberFunction& f, const FiberFunction& g, const MCConfig& cfg);

struct FlowCheck {
  cd phase_degree, phase_spectral;  // e^{−it(2l+2n+1)}, e^{−it√(λ_l+(2n+1)²)}
  double scalar_residual = 0.0;
  MCEstimate lhs, rhs;              // T(σ_t^*g) and e^{−it(2l+2n+1)} T(g)
  double operator_residual = 0.0;
  double operator_stderr = 0.0;
  cd quantum_phase_pi;              // phase at t = π
  double classical_return_pi = 0.0;  // ‖e^{−2iπ}A − A‖/‖A‖
};
FlowCheck flow_commutation_check(int n, int l, double t, const MCConfig& cfg);

enum class BNorm { Displayed, Chain };

struct KernelSeries {
  int n = 0, L = 0;
  double norm = 0.0;
  std::vector<double> log_r;  // log(I_l / b_l)
  std::vector<double> terms;  // I_l ‖A‖^{2l} / b_l
  double value = 0.0, tail_bound = 0.0, tail_ratio = 0.0;
};
KernelSeries kernel_diag(int n, double norm, int L, BNorm bn = BNorm::Displayed, double tail_tol = 1e-12);

struct ReproduceCheck {
  MCEstimate reproduced;  // ⟨f, R(·, A′)⟩
  cd expected;            // f(A′)
  MCEstimate norm2;       // ‖f‖²
  double kernel_diag = 0.0;  // R(A′, A′)
  double bound_lhs = 0.0, bound_rhs = 0.0;  // |f(A′)|², R(A′,A′)‖f‖²
};
// f = c0 + c1⟨π(u), A⟩ ∈ P₀ ⊕ P₁.
ReproduceCheck kernel_reproduce_check(int n, cd c0, cd c1, const HVector& u, const CMatrix& aprime,
                                      const MCConfig& cfg, BNorm bn = BNorm::Displayed);

}  // namespace hq
