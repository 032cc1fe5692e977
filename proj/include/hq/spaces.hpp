#pragma once
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hq/quat.hpp"
#include "hq/rng.hpp"

namespace hq {

struct Tolerances {
  double eq = 1e-10;    // equality constraints, relative
  double rank = 1e-8;   // singular value threshold relative to σ_max
  double boundary = 1e-8;
};

struct SphereCovector {
  HVector p, q;
  int n() const { return static_cast<int>(p.size()) - 1; }
};

struct CotangentPointH {
  QMatrix P, Q;
  int n() const { return P.m - 1; }
};

struct BTuple {
  std::vector<Eigen::Matrix2cd> B;

  int n() const { return static_cast<int>(B.size()) - 1; }
  // (z_0..z_{2n+1}, w_0..w_{2n+1}), B_i = [[z_{2i}, w_{2i}], [z_{2i+1}, w_{2i+1}]]
  Eigen::VectorXcd vec() const;
  static BTuple from_vec(const Eigen::VectorXcd& v);
  double norm() const;
  cd D() const;  // Σ det B_i
};

BTuple operator*(const BTuple& b, const Eigen::Matrix2cd& g);  // right action

// Membership predicates.
bool in_E_S(const SphereCovector& x, const Tolerances& t = {});
bool in_E_S0(const SphereCovector& x, const Tolerances& t = {});
bool in_E_H(const CotangentPointH& x, const Tolerances& t = {});
bool in_tE_S(const BTuple& b, const Tolerances& t = {});
bool in_tE_S0(const BTuple& b, const Tolerances& t = {});
bool in_tE_H(const CMatrix& a, const Tolerances& t = {});

// Residual of the displayed z/w form of the 𝐄̃_S⁰ condition (kept for
// comparison with the corrected predicate, which uses Σ B_i* B_i ∝ Id).
double displayed_form_tES0_residual(const BTuple& b);
double tES0_residual(const BTuple& b);
int numerical_rank(const CMatrix& a, double rel);

// Maps.
CotangentPointH alpha(const SphereCovector& x, const Tolerances& t = {});
BTuple tau_S(const SphereCovector& x, const Tolerances& t = {});
CMatrix tau_H(const CotangentPointH& x, const Tolerances& t = {});
CMatrix beta(const BTuple& b, const Tolerances& t = {});
QMatrix hopf(const HVector& p);  // π(p) = (p_i θ(p_j))
double metric_gH(const QMatrix& q1, const QMatrix& q2);

SphereCovector tau_S_inv(const BTuple& b, const Tolerances& t = {});
CotangentPointH tau_H_inv(const CMatrix& a, const Tolerances& t = {});
HVector lift(const QMatrix& P);  // some p with π(p) = P

// Unchecked fast paths for sampling loops. tau_H_of_ES0 equals
// tau_H(alpha(p, q)) when (q,p)_ℍ = 0; P_from_A is the P part of tau_H_inv.
CMatrix tau_H_of_ES0(const HVector& p, const HVector& q);
QMatrix P_from_A(const CMatrix& a);
// ⟨π(p), A⟩_ℂ = ½ tr(Ψ* A Ψ), Ψ the column stack of ρ(p_i)
cd pair_PA(const HVector& p, const CMatrix& a);

// Samplers.
Eigen::VectorXd random_sphere(int dim, Rng& rng);
HVector random_unit_hvector(int n, Rng& rng);
// Gaussian vector orthogonal to p·e_j, j = 0..3, normalized to unit length.
HVector random_horizontal(const HVector& p, Rng& rng);
SphereCovector random_ES0(int n, double qnorm, Rng& rng);
SphereCovector random_ES(int n, double qnorm, Rng& rng);
CotangentPointH random_EH(int n, double Qnorm, Rng& rng);
CMatrix random_tEH(int n, Rng& rng);
Eigen::Matrix2cd random_sl2(Rng& rng);
Quaternion random_unit_quaternion(Rng& rng);

// JSON point records {space, n, data: row-major complex pairs}.
std::string point_to_json(const SphereCovector& x);
std::string point_to_json(const BTuple& b);
std::string point_to_json(const CMatrix& a);
SphereCovector es_from_json(const std::string& s);
BTuple btuple_from_json(const std::string& s);
CMatrix amatrix_from_json(const std::string& s);

}  // namespace hq
