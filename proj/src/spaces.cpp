#include "hq/spaces.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "hq/numerics.hpp"

namespace hq {

using nlohmann::json;

Eigen::VectorXcd BTuple::vec() const {
  const int m = 2 * static_cast<int>(B.size());
  Eigen::VectorXcd v(2 * m);
  for (std::size_t i = 0; i < B.size(); ++i) {
    v[2 * i] = B[i](0, 0);
    v[2 * i + 1] = B[i](1, 0);
    v[m + 2 * i] = B[i](0, 1);
    v[m + 2 * i + 1] = B[i](1, 1);
  }
  return v;
}

BTuple BTuple::from_vec(const Eigen::VectorXcd& v) {
  if (v.size() % 4) throw std::invalid_argument("BTuple::from_vec: bad length");
  const int m = static_cast<int>(v.size() / 2);
  BTuple b;
  b.B.resize(m / 2);
  for (int i = 0; i < m / 2; ++i)
    b.B[i] << v[2 * i], v[m + 2 * i], v[2 * i + 1], v[m + 2 * i + 1];
  return b;
}

double BTuple::norm() const {
  double s = 0.0;
  for (const auto& b : B) s += b.squaredNorm();
  return std::sqrt(s);
}

cd BTuple::D() const {
  cd s = 0.0;
  for (const auto& b : B) s += b.determinant();
  return s;
}

BTuple operator*(const BTuple& b, const Eigen::Matrix2cd& g) {
  BTuple r = b;
  for (auto& x : r.B) x = x * g;
  return r;
}

bool in_E_S(const SphereCovector& x, const Tolerances& t) {
  if (x.p.size() != x.q.size() || x.p.size() < 2) return false;
  if (std::abs(e_inner(x.p, x.p) - 1.0) > t.eq) return false;
  const double qn = e_norm(x.q);
  if (std::abs(e_inner(x.p, x.q)) > t.eq * std::max(1.0, qn)) return false;
  HVector hor = axpy(1.0, right_mul(x.p, h_inner(x.q, x.p)), x.q);
  return e_norm(hor) > t.boundary * std::max(1.0, qn);
}

bool in_E_S0(const SphereCovector& x, const Tolerances& t) {
  if (x.p.size() != x.q.size() || x.p.size() < 2) return false;
  if (std::abs(e_inner(x.p, x.p) - 1.0) > t.eq) return false;
  const double qn = e_norm(x.q);
  if (qn <= t.boundary) return false;
  return std::sqrt(h_inner(x.q, x.p).norm2()) <= t.eq * std::max(1.0, qn);
}

bool in_E_H(const CotangentPointH& x, const Tolerances& t) {
  const auto& P = x.P;
  const auto& Q = x.Q;
  if (P.m != Q.m || P.m < 2) return false;
  if (!is_jordan(P, t.eq) || !is_jordan(Q, t.eq)) return false;
  Quaternion tr = trace(P);
  if (std::abs(tr.x[0] - 1.0) > t.eq || std::abs(tr.x[1]) + std::abs(tr.x[2]) + std::abs(tr.x[3]) > t.eq)
    return false;
  if (max_abs(jordan(P, P) - P) > t.eq) return false;
  const double qs = std::max(1.0, max_abs(Q));
  if (max_abs(Q) <= t.boundary) return false;
  return max_abs(jordan(P, Q) - 0.5 * Q) <= t.eq * qs;
}

namespace {

double zw_gram(const BTuple& b) {
  Eigen::VectorXcd v = b.vec();
  const int m = static_cast<int>(v.size() / 2);
  Eigen::VectorXcd z = v.head(m), w = v.tail(m);
  return z.squaredNorm() * w.squaredNorm() - std::norm(z.dot(w));
}

}  // namespace

bool in_tE_S(const BTuple& b, const Tolerances& t) {
  if (b.B.size() < 2) return false;
  const double n2 = b.norm() * b.norm();
  if (n2 == 0.0) return false;
  if (std::abs(b.D()) > t.eq * n2) return false;
  return zw_gram(b) > t.boundary * t.boundary * n2 * n2;
}

double tES0_residual(const BTuple& b) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  for (const auto& x : b.B) s += x.adjoint() * x;
  s -= 0.5 * s.trace() * Eigen::Matrix2cd::Identity();
  const double n2 = b.norm() * b.norm();
  return s.norm() / std::max(n2, 1e-300);
}

double displayed_form_tES0_residual(const BTuple& b) {
  Eigen::VectorXcd v = b.vec();
  const int m = static_cast<int>(v.size() / 2);
  cd s = 0.0;
  for (int i = 0; i < m / 2; ++i)
    s += v[2 * i] * std::conj(v[2 * i + 1]) + v[m + 2 * i] * std::conj(v[m + 2 * i + 1]);
  const double n2 = b.norm() * b.norm();
  return std::abs(s) / std::max(n2, 1e-300);
}

bool in_tE_S0(const BTuple& b, const Tolerances& t) {
  return in_tE_S(b, t) && tES0_residual(b) <= t.eq;
}

int numerical_rank(const CMatrix& a, double rel) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel * s[0]) ++r;
  return r;
}

bool in_tE_H(const CMatrix& a, const Tolerances& t) {
  if (a.rows() != a.cols() || a.rows() % 2 || a.rows() < 4) return false;
  const double na = a.norm();
  if (na == 0.0) return false;
  CMatrix j = bigJ(static_cast<int>(a.rows() / 2));
  if ((j * a - a.transpose() * j).norm() > t.eq * na) return false;
  if ((a * a).norm() > t.eq * na * na) return false;
  return numerical_rank(a, t.rank) == 2;
}

QMatrix hopf(const HVector& p) { return outer(p, p); }

CotangentPointH alpha(const SphereCovector& x, const Tolerances& t) {
  if (!in_E_S(x, t)) throw std::invalid_argument("alpha: point is not in E_S");
  return {outer(x.p, x.p), outer(x.p, x.q) + outer(x.q, x.p)};
}

BTuple tau_S(const SphereCovector& x, const Tolerances& t) {
  if (!in_E_S(x, t)) throw std::invalid_argument("tau_S: point is not in E_S");
  const double qn = e_norm(x.q);
  BTuple b;
  b.B.resize(x.p.size());
  const cd I(0.0, 1.0);
  for (std::size_t i = 0; i < x.p.size(); ++i) b.B[i] = qn * rho(x.p[i]) + I * rho(x.q[i]);
  return b;
}

CMatrix tau_H(const CotangentPointH& x, const Tolerances& t) {
  if (max_abs(jordan(x.P, x.Q) - 0.5 * x.Q) > t.eq * std::max(1.0, max_abs(x.Q)))
    throw std::invalid_argument("tau_H: P∘Q differs from Q/2");
  const double q2 = jordan_norm2(x.Q);
  CMatrix rp = complexify(x.P), rq = complexify(x.Q);
  const cd c(0.0, std::sqrt(q2) / std::sqrt(2.0));
  return q2 * rp - rq * rq + c * rq;
}

CMatrix beta(const BTuple& b, const Tolerances& t) {
  if (!in_tE_S(b, t)) throw std::invalid_argument("beta: point is not in the tilde E_S model");
  const int m = static_cast<int>(b.B.size());
  const auto& J = Jmat();
  CMatrix a(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a.block<2, 2>(2 * i, 2 * j) = -b.B[i] * J * b.B[j].transpose() * J;
  return a;
}

double metric_gH(const QMatrix& q1, const QMatrix& q2) { return 0.5 * real_inner(q1, q2); }

SphereCovector tau_S_inv(const BTuple& b, const Tolerances& t) {
  if (!in_tE_S(b, t)) throw std::invalid_argument("tau_S_inv: point is not in the tilde E_S model");
  SphereCovector x;
  x.p.resize(b.B.size());
  x.q.resize(b.B.size());
  for (std::size_t i = 0; i < b.B.size(); ++i) {
    CQuaternion h = rho_inv(b.B[i]);
    for (int k = 0; k < 4; ++k) {
      x.p[i].x[k] = h.c[k].real();
      x.q[i].x[k] = h.c[k].imag();
    }
  }
  const double qn = e_norm(x.q);
  if (qn < t.boundary * b.norm()) throw std::invalid_argument("tau_S_inv: too close to q = 0");
  x.p = axpy(1.0 / qn, x.p, HVector(x.p.size()));
  return x;
}

CotangentPointH tau_H_inv(const CMatrix& a, const Tolerances& t) {
  if (!in_tE_H(a, t)) throw std::invalid_argument("tau_H_inv: point is not in the tilde E_H model");
  QSplit s = quaternionic_split(a);
  const double q2 = std::sqrt(2.0) * std::sqrt(jordan_norm2(s.im));
  QMatrix Q = (std::sqrt(2.0) / std::sqrt(q2)) * s.im;
  return {P_from_A(a), Q};
}

HVector lift(const QMatrix& P) {
  int k = 0;
  for (int i = 1; i < P.m; ++i)
    if (P(i, i).x[0] > P(k, k).x[0]) k = i;
  const double d = P(k, k).x[0];
  if (!(d > 0.0)) throw std::invalid_argument("lift: P has no positive diagonal entry");
  HVector p(P.m);
  for (int i = 0; i < P.m; ++i) p[i] = (1.0 / std::sqrt(d)) * P(i, k);
  return p;
}

CMatrix tau_H_of_ES0(const HVector& p, const HVector& q) {
  const int m = static_cast<int>(p.size());
  const double qn = e_norm(q);
  const cd I(0.0, 1.0);
  const auto& J = Jmat();
  std::vector<Eigen::Matrix2cd> b(m), bt(m);
  for (int i = 0; i < m; ++i) {
    b[i] = qn * rho(p[i]) + I * rho(q[i]);
    bt[i] = J * b[i].transpose() * J;
  }
  CMatrix a(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a.block<2, 2>(2 * i, 2 * j) = -b[i] * bt[j];
  return a;
}

QMatrix P_from_A(const CMatrix& a) {
  QSplit s = quaternionic_split(a);
  const double q2 = std::sqrt(2.0) * std::sqrt(jordan_norm2(s.im));
  QMatrix Q = (std::sqrt(2.0) / std::sqrt(q2)) * s.im;
  return (1.0 / q2) * (s.re + qmatmul(Q, Q));
}

cd pair_PA(const HVector& p, const CMatrix& a) {
  const int m = static_cast<int>(p.size());
  Eigen::MatrixXcd psi(2 * m, 2);
  for (int i = 0; i < m; ++i) psi.block<2, 2>(2 * i, 0) = rho(p[i]);
  return 0.5 * (psi.adjoint() * a * psi).trace();
}

Eigen::VectorXd random_sphere(int dim, Rng& rng) { return sphere_uniform(dim, rng); }

HVector random_unit_hvector(int n, Rng& rng) { return from_flat(sphere_uniform(4 * n + 3, rng)); }

HVector random_horizontal(const HVector& p, Rng& rng) {
  HVector q(p.size());
  for (int attempt = 0; attempt < 16; ++attempt) {
    for (auto& x : q)
      for (double& v : x.x) v = rng.normal();
    for (int k = 0; k < 4; ++k) {
      HVector pe = right_mul(p, Quaternion::unit(k));
      q = axpy(-e_inner(q, pe), pe, q);
    }
    const double qn = e_norm(q);
    if (qn > 1e-8) return axpy(1.0 / qn, q, HVector(q.size()));
  }
  throw std::runtime_error("random_horizontal: degenerate draws");
}

SphereCovector random_ES0(int n, double qnorm, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_ES0: n must be positive");
  SphereCovector x;
  x.p = random_unit_hvector(n, rng);
  x.q = axpy(qnorm, random_horizontal(x.p, rng), HVector(n + 1));
  return x;
}

SphereCovector random_ES(int n, double qnorm, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_ES: n must be positive");
  SphereCovector x;
  x.p = random_unit_hvector(n, rng);
  for (int attempt = 0; attempt < 16; ++attempt) {
    HVector q(n + 1);
    for (auto& h : q)
      for (double& v : h.x) v = rng.normal();
    q = axpy(-e_inner(q, x.p), x.p, q);
    x.q = axpy(qnorm / e_norm(q), q, HVector(n + 1));
    if (in_E_S(x)) return x;
  }
  throw std::runtime_error("random_ES: degenerate draws");
}

CotangentPointH random_EH(int n, double Qnorm, Rng& rng) {
  return alpha(random_ES0(n, Qnorm / std::sqrt(2.0), rng));
}

CMatrix random_tEH(int n, Rng& rng) {
  const double qn = 0.5 + rng.uniform();
  return tau_H(random_EH(n, qn, rng));
}

Eigen::Matrix2cd random_sl2(Rng& rng) {
  for (;;) {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = cd(rng.normal(), rng.normal());
    cd d = m.determinant();
    if (std::abs(d) > 0.1) return m / std::sqrt(d);
  }
}

Quaternion random_unit_quaternion(Rng& rng) {
  Eigen::VectorXd v = sphere_uniform(3, rng);
  return Quaternion{{v[0], v[1], v[2], v[3]}};
}

namespace {

json cpairs(const CMatrix& m) {
  json d = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d.push_back({m(i, j).real(), m(i, j).imag()});
  return d;
}

CMatrix from_cpairs(const json& d, Eigen::Index rows, Eigen::Index cols) {
  if (!d.is_array() || static_cast<Eigen::Index>(d.size()) != rows * cols)
    throw std::invalid_argument("point record: data has the wrong length");
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& e = d[i * cols + j];
      m(i, j) = cd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

json parse_record(const std::string& s, const char* space) {
  json j = json::parse(s);
  if (j.at("space").get<std::string>() != space)
    throw std::invalid_argument(std::string("point record: expected space ") + space);
  if (j.at("n").get<int>() < 1) throw std::invalid_argument("point record: n must be positive");
  return j;
}

}  // namespace

std::string point_to_json(const SphereCovector& x) {
  const int n = x.n();
  CMatrix m(2, 4 * (n + 1));
  m.row(0) = to_flat(x.p).transpose().cast<cd>();
  m.row(1) = to_flat(x.q).transpose().cast<cd>();
  return json{{"space", "E_S"}, {"n", n}, {"data", cpairs(m)}}.dump();
}

std::string point_to_json(const BTuple& b) {
  const int n = b.n();
  CMatrix m(2 * n + 2, 2);
  for (int i = 0; i <= n; ++i) m.block<2, 2>(2 * i, 0) = b.B[i];
  return json{{"space", "tE_S"}, {"n", n}, {"data", cpairs(m)}}.dump();
}

std::string point_to_json(const CMatrix& a) {
  const int n = static_cast<int>(a.rows() / 2) - 1;
  return json{{"space", "tE_H"}, {"n", n}, {"data", cpairs(a)}}.dump();
}

SphereCovector es_from_json(const std::string& s) {
  json j = parse_record(s, "E_S");
  const int n = j["n"].get<int>();
  CMatrix m = from_cpairs(j["data"], 2, 4 * (n + 1));
  SphereCovector x;
  x.p = from_flat(m.row(0).real().transpose());
  x.q = from_flat(m.row(1).real().transpose());
  return x;
}

BTuple btuple_from_json(const std::string& s) {
  json j = parse_record(s, "tE_S");
  const int n = j["n"].get<int>();
  CMatrix m = from_cpairs(j["data"], 2 * n + 2, 2);
  BTuple b;
  b.B.resize(n + 1);
  for (int i = 0; i <= n; ++i) b.B[i] = m.block<2, 2>(2 * i, 0);
  return b;
}

CMatrix amatrix_from_json(const std::string& s) {
  json j = parse_record(s, "tE_H");
  const int n = j["n"].get<int>();
  return from_cpairs(j["data"], 2 * n + 2, 2 * n + 2);
}

}  // namespace hq
