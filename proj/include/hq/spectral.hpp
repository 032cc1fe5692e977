#pragma once
#include <Eigen/Dense>
#include <cstdint>

#include "hq/numerics.hpp"
#include "hq/spaces.hpp"

namespace hq {

struct EigenspaceInfo {
  int n = 0, l = 0;
  std::int64_t dim = 0;
  double lambda = 0.0;
};

// dim H_l from the Gamma-product formula; throws if it is not an integer.
std::int64_t dim_Hl(int n, int l);
double log_dim_Hl(int n, double l);
double lambda_l(int n, int l);
// Returns |(2l+2n+1)² − (λ_l+(2n+1)²)| + |√(λ_l+(2n+1)²) − (2l+2n+1)|.
double lambda_identity_residual(int n, int l);
EigenspaceInfo eigenspace_info(int n, int l);

// q_A(p) = pᵀ M p = ⟨π(p), A⟩_ℂ for p ∈ ℝ^{4n+4}.
struct QuadForm {
  CMatrix A;
  Eigen::MatrixXcd M;
  cd operator()(const Eigen::VectorXd& p) const { return (p.cast<cd>().transpose() * M * p.cast<cd>()).value(); }
};
QuadForm build_quadform(const CMatrix& a);

struct HarmonicityCertificate {
  double trace_residual = 0.0;          // |tr M| / ‖M‖
  double null_gradient_residual = 0.0;  // ‖M²‖ / ‖M‖², coefficients of ⟨∇q,∇q⟩_ℂ
  double fd_laplacian_residual = 0.0;   // |Δ q^l(p)| / Σ_k |∂²_k q^l(p)| at a random p
};

HarmonicityCertificate harmonicity_certificate(const CMatrix& a, int l, Rng& rng);
// Same computation without the membership test, for negative controls.
HarmonicityCertificate harmonicity_certificate_unchecked(const CMatrix& a, int l, Rng& rng);

// The matrix ρ([[1, √−1], [√−1, −1]] ⊕ 0).
CMatrix harmonic_model_point(int n);
// X + √−1 Y with X, Y random in H(n+1, ℍ); generically A² ≠ 0.
CMatrix random_hermitian_pair(int n, Rng& rng);

// max |q(p r) − q(p)| / ‖A‖ over random p ∈ S^{4n+3}, r ∈ Sp(1). With mixed,
// π(p) is replaced by (p_i θ(w_j)) for a fixed random w.
double sp1_invariance_check(const CMatrix& a, int samples, Rng& rng, bool mixed = false);
double sp1_invariance_at(const CMatrix& a, const HVector& p, const Quaternion& r);

// λ_l against the degree-2l eigenvalue k(k + 4n + 2) of S^{4n+3}.
double sphere_descent_check(int n, int l);

}  // namespace hq
