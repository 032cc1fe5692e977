#include "hq/quat.hpp"

#include <cmath>
#include <stdexcept>

namespace hq {

namespace {
const cd I(0.0, 1.0);

template <class T>
std::array<T, 4> mul4(const std::array<T, 4>& a, const std::array<T, 4>& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}
}  // namespace

Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  Quaternion r;
  for (int i = 0; i < 4; ++i) r.x[i] = a.x[i] + b.x[i];
  return r;
}

Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  Quaternion r;
  for (int i = 0; i < 4; ++i) r.x[i] = a.x[i] - b.x[i];
  return r;
}

Quaternion operator*(double s, const Quaternion& a) {
  Quaternion r;
  for (int i = 0; i < 4; ++i) r.x[i] = s * a.x[i];
  return r;
}

Quaternion qmul(const Quaternion& a, const Quaternion& b) { return Quaternion{mul4(a.x, b.x)}; }

Quaternion theta(const Quaternion& a) { return Quaternion{{a.x[0], -a.x[1], -a.x[2], -a.x[3]}}; }

CQuaternion operator+(const CQuaternion& a, const CQuaternion& b) {
  CQuaternion r;
  for (int i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

CQuaternion operator*(cd s, const CQuaternion& a) {
  CQuaternion r;
  for (int i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
  return r;
}

CQuaternion qmul(const CQuaternion& a, const CQuaternion& b) {
  CQuaternion r;
  r.c = mul4(a.c, b.c);
  return r;
}

CQuaternion theta(const CQuaternion& a) {
  CQuaternion r;
  r.c = {a.c[0], -a.c[1], -a.c[2], -a.c[3]};
  return r;
}

Eigen::Matrix2cd rho(const CQuaternion& h) {
  Eigen::Matrix2cd m;
  m << h.c[0] + I * h.c[1], h.c[2] + I * h.c[3], -h.c[2] + I * h.c[3], h.c[0] - I * h.c[1];
  return m;
}

Eigen::Matrix2cd rho(const Quaternion& h) { return rho(CQuaternion(h)); }

CQuaternion rho_inv(const Eigen::Matrix2cd& m) {
  CQuaternion h;
  h.c[0] = 0.5 * (m(0, 0) + m(1, 1));
  h.c[1] = (m(0, 0) - m(1, 1)) / (2.0 * I);
  h.c[2] = 0.5 * (m(0, 1) - m(1, 0));
  h.c[3] = (m(0, 1) + m(1, 0)) / (2.0 * I);
  return h;
}

Quaternion rho_inv_real(const Eigen::Matrix2cd& m, double tol) {
  CQuaternion h = rho_inv(m);
  double im = 0.0;
  for (int i = 0; i < 4; ++i) im = std::max(im, std::abs(h.c[i].imag()));
  if (im > tol * std::max(1.0, m.norm()))
    throw std::invalid_argument("rho_inv_real: matrix is not the image of a real quaternion");
  return Quaternion{{h.c[0].real(), h.c[1].real(), h.c[2].real(), h.c[3].real()}};
}

const Eigen::Matrix2cd& Jmat() {
  static const Eigen::Matrix2cd j = [] {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, -1.0, 0.0;
    return m;
  }();
  return j;
}

Quaternion h_inner(const HVector& h, const HVector& k) {
  Quaternion s;
  for (std::size_t i = 0; i < h.size(); ++i) s = s + qmul(theta(h[i]), k[i]);
  return s;
}

double e_inner(const HVector& h, const HVector& k) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (int j = 0; j < 4; ++j) s += h[i].x[j] * k[i].x[j];
  return s;
}

double e_norm(const HVector& h) { return std::sqrt(e_inner(h, h)); }

HVector right_mul(const HVector& h, const Quaternion& r) {
  HVector o(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) o[i] = qmul(h[i], r);
  return o;
}

HVector axpy(double a, const HVector& x, const HVector& y) {
  HVector o(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) o[i] = a * x[i] + y[i];
  return o;
}

Eigen::VectorXd to_flat(const HVector& h) {
  Eigen::VectorXd v(4 * h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    for (int j = 0; j < 4; ++j) v[4 * i + j] = h[i].x[j];
  return v;
}

HVector from_flat(const Eigen::VectorXd& v) {
  if (v.size() % 4) throw std::invalid_argument("from_flat: length must be a multiple of 4");
  HVector h(v.size() / 4);
  for (std::size_t i = 0; i < h.size(); ++i)
    for (int j = 0; j < 4; ++j) h[i].x[j] = v[4 * i + j];
  return h;
}

QMatrix QMatrix::identity(int m) {
  QMatrix x(m);
  for (int i = 0; i < m; ++i) x(i, i).x[0] = 1.0;
  return x;
}

QMatrix operator+(const QMatrix& x, const QMatrix& y) {
  QMatrix r(x.m);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

QMatrix operator-(const QMatrix& x, const QMatrix& y) {
  QMatrix r(x.m);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

QMatrix operator*(double s, const QMatrix& x) {
  QMatrix r(x.m);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

QMatrix qmatmul(const QMatrix& x, const QMatrix& y) {
  QMatrix r(x.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) {
      Quaternion s;
      for (int k = 0; k < x.m; ++k) s = s + qmul(x(i, k), y(k, j));
      r(i, j) = s;
    }
  return r;
}

QMatrix jordan(const QMatrix& x, const QMatrix& y) { return 0.5 * (qmatmul(x, y) + qmatmul(y, x)); }

QMatrix theta_transpose(const QMatrix& x) {
  QMatrix r(x.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) r(i, j) = theta(x(j, i));
  return r;
}

Quaternion trace(const QMatrix& x) {
  Quaternion s;
  for (int i = 0; i < x.m; ++i) s = s + x(i, i);
  return s;
}

double max_abs(const QMatrix& x) {
  double s = 0.0;
  for (const auto& q : x.a)
    for (double v : q.x) s = std::max(s, std::abs(v));
  return s;
}

bool is_jordan(const QMatrix& x, double tol) {
  return max_abs(x - theta_transpose(x)) <= tol * std::max(1.0, max_abs(x));
}

double real_inner(const QMatrix& x, const QMatrix& y) { return trace(jordan(x, y)).x[0]; }

double jordan_norm2(const QMatrix& x) { return real_inner(x, x); }

QMatrix outer(const HVector& p, const HVector& q) {
  const int m = static_cast<int>(p.size());
  QMatrix r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r(i, j) = qmul(p[i], theta(q[j]));
  return r;
}

HVector apply(const QMatrix& x, const HVector& h) {
  HVector o(x.m);
  for (int i = 0; i < x.m; ++i) {
    Quaternion s;
    for (int k = 0; k < x.m; ++k) s = s + qmul(x(i, k), h[k]);
    o[i] = s;
  }
  return o;
}

CQMatrix::CQMatrix(const QMatrix& x) : m(x.m), a(x.a.size()) {
  for (std::size_t i = 0; i < x.a.size(); ++i) a[i] = CQuaternion(x.a[i]);
}

CMatrix complexify(const CQMatrix& x) {
  CMatrix r(2 * x.m, 2 * x.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) r.block<2, 2>(2 * i, 2 * j) = rho(x(i, j));
  return r;
}

CMatrix complexify(const QMatrix& x) { return complexify(CQMatrix(x)); }

CQMatrix decomplexify(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2)
    throw std::invalid_argument("decomplexify: need an even square matrix");
  const int m = static_cast<int>(a.rows() / 2);
  CQMatrix r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r(i, j) = rho_inv(a.block<2, 2>(2 * i, 2 * j));
  return r;
}

CMatrix bigJ(int m) {
  CMatrix j = CMatrix::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) j.block<2, 2>(2 * i, 2 * i) = Jmat();
  return j;
}

cd cinner(const CMatrix& a, const CMatrix& b) {
  const int m = static_cast<int>(a.rows() / 2);
  CMatrix j = bigJ(m);
  // 𝕁⁻¹ = −𝕁
  return 0.5 * (a * j * b.transpose() * (-j)).trace();
}

double frob(const CMatrix& a) { return a.norm(); }

QSplit quaternionic_split(const CMatrix& a) {
  const int m = static_cast<int>(a.rows() / 2);
  QSplit s{QMatrix(m), QMatrix(m)};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CQuaternion h = rho_inv(a.block<2, 2>(2 * i, 2 * j));
      for (int k = 0; k < 4; ++k) {
        s.re(i, j).x[k] = h.c[k].real();
        s.im(i, j).x[k] = h.c[k].imag();
      }
    }
  return s;
}

}  // namespace hq
