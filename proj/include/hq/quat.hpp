#pragma once
#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

namespace hq {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// x0 e0 + x1 e1 + x2 e2 + x3 e3
struct Quaternion {
  std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

  static Quaternion unit(int i) {
    Quaternion q;
    q.x[i] = 1.0;
    return q;
  }
  double operator[](int i) const { return x[i]; }
  double& operator[](int i) { return x[i]; }
  double norm2() const { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]; }
};

// Element of ℍ⊗ℂ.
struct CQuaternion {
  std::array<cd, 4> c{};

  CQuaternion() = default;
  CQuaternion(const Quaternion& q) {
    for (int i = 0; i < 4; ++i) c[i] = q.x[i];
  }
  cd operator[](int i) const { return c[i]; }
  cd& operator[](int i) { return c[i]; }
};

Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a, const Quaternion& b);
Quaternion operator*(double s, const Quaternion& a);
Quaternion qmul(const Quaternion& a, const Quaternion& b);
Quaternion theta(const Quaternion& a);

CQuaternion operator+(const CQuaternion& a, const CQuaternion& b);
CQuaternion operator*(cd s, const CQuaternion& a);
CQuaternion qmul(const CQuaternion& a, const CQuaternion& b);
CQuaternion theta(const CQuaternion& a);

Eigen::Matrix2cd rho(const CQuaternion& h);
Eigen::Matrix2cd rho(const Quaternion& h);
CQuaternion rho_inv(const Eigen::Matrix2cd& m);
// Rejects matrices that are not ρ of a real quaternion (beyond tol·‖m‖).
Quaternion rho_inv_real(const Eigen::Matrix2cd& m, double tol = 1e-12);

const Eigen::Matrix2cd& Jmat();

// Right ℍ-vector.
using HVector = std::vector<Quaternion>;

Quaternion h_inner(const HVector& h, const HVector& k);  // Σ θ(h_i) k_i
double e_inner(const HVector& h, const HVector& k);
double e_norm(const HVector& h);
HVector right_mul(const HVector& h, const Quaternion& r);
HVector axpy(double a, const HVector& x, const HVector& y);  // a x + y
Eigen::VectorXd to_flat(const HVector& h);
HVector from_flat(const Eigen::VectorXd& v);

// Square quaternion matrix, row-major.
struct QMatrix {
  int m = 0;
  std::vector<Quaternion> a;

  QMatrix() = default;
  explicit QMatrix(int m_) : m(m_), a(static_cast<std::size_t>(m_) * m_) {}
  static QMatrix identity(int m);

  Quaternion& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * m + j]; }
  const Quaternion& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * m + j]; }
};

QMatrix operator+(const QMatrix& x, const QMatrix& y);
QMatrix operator-(const QMatrix& x, const QMatrix& y);
QMatrix operator*(double s, const QMatrix& x);
QMatrix qmatmul(const QMatrix& x, const QMatrix& y);
QMatrix jordan(const QMatrix& x, const QMatrix& y);  // (XY+YX)/2
QMatrix theta_transpose(const QMatrix& x);
Quaternion trace(const QMatrix& x);
double max_abs(const QMatrix& x);
bool is_jordan(const QMatrix& x, double tol = 1e-12);
// ⟨X,Y⟩_ℝ = Re tr(X∘Y)
double real_inner(const QMatrix& x, const QMatrix& y);
double jordan_norm2(const QMatrix& x);

QMatrix outer(const HVector& p, const HVector& q);  // (p_i θ(q_j))
HVector apply(const QMatrix& x, const HVector& h);

// ℍ-matrix ⊗ ℂ.
struct CQMatrix {
  int m = 0;
  std::vector<CQuaternion> a;

  CQMatrix() = default;
  explicit CQMatrix(int m_) : m(m_), a(static_cast<std::size_t>(m_) * m_) {}
  CQMatrix(const QMatrix& x);

  CQuaternion& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * m + j]; }
  const CQuaternion& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * m + j]; }
};

CMatrix complexify(const CQMatrix& x);
CMatrix complexify(const QMatrix& x);
CQMatrix decomplexify(const CMatrix& a);

CMatrix bigJ(int m);  // block-diagonal J, size 2m
// ⟨A,B⟩_ℂ = ½ tr(A 𝕁 Bᵀ 𝕁⁻¹)
cd cinner(const CMatrix& a, const CMatrix& b);
double frob(const CMatrix& a);

// A = X + iY with X, Y real quaternion matrices (blockwise quaternionic
// real structure M ↦ J M̄ J⁻¹).
struct QSplit {
  QMatrix re, im;
};
QSplit quaternionic_split(const CMatrix& a);

}  // namespace hq
