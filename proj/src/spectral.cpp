#include "hq/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace hq {

namespace {

void check_nl(int n, int l) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (l < 0) throw std::invalid_argument("l must be nonnegative");
}

QMatrix random_jordan(int n, Rng& rng) {
  QMatrix r(n + 1);
  for (auto& q : r.a)
    for (double& v : q.x) v = rng.normal();
  return 0.5 * (r + theta_transpose(r));
}

HarmonicityCertificate certify(const CMatrix& a, int l, Rng& rng) {
  if (l < 0) throw std::invalid_argument("harmonicity_certificate: l must be nonnegative");
  QuadForm q = build_quadform(a);
  const double nm = q.M.norm();
  HarmonicityCertificate c;
  c.trace_residual = std::abs(q.M.trace()) / nm;
  c.null_gradient_residual = (q.M * q.M).norm() / (nm * nm);
  if (l >= 1 && l <= 3) {
    const auto d = q.M.rows();
    Eigen::VectorXd p = sphere_uniform(static_cast<int>(d) - 1, rng);
    auto f = [&](const Eigen::VectorXd& x) { return std::pow(q(x), l); };
    const double h = 1e-2;
    cd lap = 0.0;
    double scale = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
      e[k] = h;
      const cd s = (-f(p + 2 * e) + 16.0 * f(p + e) - 30.0 * f(p) + 16.0 * f(p - e) - f(p - 2 * e)) / (12.0 * h * h);
      lap += s;
      scale += std::abs(s);
    }
    c.fd_laplacian_residual = scale > 0.0 ? std::abs(lap) / scale : 0.0;
  }
  return c;
}

}  // namespace

double log_dim_Hl(int n, double l) {
  return std::log(2.0 * n / (2.0 * n + 1.0)) + std::log((l + 1.0) / (l + 2.0 * n)) + std::log(2.0 * l + 2.0 * n + 1.0) +
         2.0 * (log_gamma(l + 2.0 * n + 1.0) - log_gamma(2.0 * n + 1.0) - log_gamma(l + 2.0));
}

std::int64_t dim_Hl(int n, int l) {
  check_nl(n, l);
  const double x = std::exp(log_dim_Hl(n, l));
  if (!(x < 9.0e15)) throw std::overflow_error("dim_Hl: dimension exceeds exact integer range");
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-6 * std::max(1.0, x))
    throw std::logic_error("dim_Hl: Gamma-product formula is not an integer");
  return static_cast<std::int64_t>(r);
}

double lambda_l(int n, int l) {
  check_nl(n, l);
  return 4.0 * l * (2.0 * n + 1.0 + l);
}

double lambda_identity_residual(int n, int l) {
  const double k = 2.0 * l + 2.0 * n + 1.0;
  const double s = lambda_l(n, l) + (2.0 * n + 1.0) * (2.0 * n + 1.0);
  return std::abs(k * k - s) + std::abs(std::sqrt(s) - k);
}

EigenspaceInfo eigenspace_info(int n, int l) { return {n, l, dim_Hl(n, l), lambda_l(n, l)}; }

QuadForm build_quadform(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2) throw std::invalid_argument("build_quadform: bad matrix shape");
  const auto d = 2 * a.rows();
  auto q = [&](const Eigen::VectorXd& p) { return pair_PA(from_flat(p), a); };
  QuadForm f;
  f.A = a;
  f.M.resize(d, d);
  std::vector<Eigen::VectorXd> e(d, Eigen::VectorXd::Zero(d));
  for (Eigen::Index k = 0; k < d; ++k) e[k][k] = 1.0;
  for (Eigen::Index k = 0; k < d; ++k) f.M(k, k) = q(e[k]);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index j = k + 1; j < d; ++j) f.M(k, j) = f.M(j, k) = 0.5 * (q(e[k] + e[j]) - f.M(k, k) - f.M(j, j));
  return f;
}

HarmonicityCertificate harmonicity_certificate(const CMatrix& a, int l, Rng& rng) {
  if (!in_tE_H(a)) throw std::invalid_argument("harmonicity_certificate: A is not in the tilde E_H model");
  return certify(a, l, rng);
}

HarmonicityCertificate harmonicity_certificate_unchecked(const CMatrix& a, int l, Rng& rng) {
  return certify(a, l, rng);
}

CMatrix harmonic_model_point(int n) {
  if (n < 1) throw std::invalid_argument("harmonic_model_point: n must be at least 1");
  CQMatrix x(n + 1);
  x(0, 0).c[0] = 1.0;
  x(0, 1).c[0] = cd(0.0, 1.0);
  x(1, 0).c[0] = cd(0.0, 1.0);
  x(1, 1).c[0] = -1.0;
  return complexify(x);
}

CMatrix random_hermitian_pair(int n, Rng& rng) {
  return complexify(random_jordan(n, rng)) + cd(0.0, 1.0) * complexify(random_jordan(n, rng));
}

double sp1_invariance_at(const CMatrix& a, const HVector& p, const Quaternion& r) {
  return std::abs(pair_PA(right_mul(p, r), a) - pair_PA(p, a)) / a.norm();
}

double sp1_invariance_check(const CMatrix& a, int samples, Rng& rng, bool mixed) {
  const int n = static_cast<int>(a.rows() / 2) - 1;
  HVector w = random_unit_hvector(n, rng);
  auto q = [&](const HVector& p) {
    return mixed ? cinner(complexify(outer(p, w)), a) : pair_PA(p, a);
  };
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    HVector p = random_unit_hvector(n, rng);
    Quaternion r = random_unit_quaternion(rng);
    worst = std::max(worst, std::abs(q(right_mul(p, r)) - q(p)) / a.norm());
  }
  return worst;
}

double sphere_descent_check(int n, int l) {
  const double k = 2.0 * l;
  return std::abs(k * (k + 4.0 * n + 2.0) - lambda_l(n, l));
}

}  // namespace hq
