#include "hq/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hq {

namespace {

const cd I(0.0, 1.0);
const double kPi = std::numbers::pi;

HVector hscale(double s, const HVector& h) { return axpy(s, h, HVector(h.size())); }

HVector hadd(const HVector& a, const HVector& b) { return axpy(1.0, a, b); }

// Re tr(XY), equal to ⟨X,Y⟩_ℝ for θ-hermitian X, Y
double re_trace_product(const QMatrix& x, const QMatrix& y) {
  double s = 0.0;
  for (int i = 0; i < x.m; ++i)
    for (int k = 0; k < x.m; ++k) s += qmul(x(i, k), y(k, i)).x[0];
  return s;
}

Eigen::MatrixXcd orth(const Eigen::MatrixXcd& m, Eigen::Index keep, double* cond) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (keep > s.size()) throw std::runtime_error("orth: not enough columns");
  if (cond) *cond = s[keep - 1] > 0.0 ? s[0] / s[keep - 1] : INFINITY;
  return svd.matrixU().leftCols(keep);
}

cd blk(int m) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    c(k, 2 * k) = 1.0;
    c(k, 2 * k + 1) = I;
    c(m + k, 2 * k) = 1.0;
    c(m + k, 2 * k + 1) = -I;
  }
  return c.determinant();
}

// B = ρ(u) + iρ(v) blockwise, flattened real parts.
void split_uv(const Eigen::VectorXcd& vec, Eigen::VectorXd& u, Eigen::VectorXd& v) {
  BTuple b = BTuple::from_vec(vec);
  const int m = static_cast<int>(b.B.size());
  u.resize(4 * m);
  v.resize(4 * m);
  for (int i = 0; i < m; ++i) {
    CQuaternion h = rho_inv(b.B[i]);
    for (int k = 0; k < 4; ++k) {
      u[4 * i + k] = h.c[k].real();
      v[4 * i + k] = h.c[k].imag();
    }
  }
}

// differential of B ↦ p = u/|v| along the displacement d
Eigen::VectorXd dp_of(const Eigen::VectorXcd& b, const Eigen::VectorXcd& d) {
  Eigen::VectorXd u, v, ud, vd;
  split_uv(b, u, v);
  split_uv(d, ud, vd);
  const double nv = v.norm();
  return ud / nv - u * v.dot(vd) / (nv * nv * nv);
}

Eigen::VectorXd p_of(const Eigen::VectorXcd& b) {
  Eigen::VectorXd u, v;
  split_uv(b, u, v);
  return u / v.norm();
}

Eigen::MatrixXd omega_gram(const CMatrix& H, const std::vector<Eigen::VectorXcd>& basis, double scale) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index c = a + 1; c < k; ++c) {
      w(a, c) = scale * omega_hessian(H, basis[a], basis[c]);
      w(c, a) = -w(a, c);
    }
  return w;
}

std::vector<Eigen::VectorXcd> realify(const Eigen::MatrixXcd& t) {
  std::vector<Eigen::VectorXcd> r;
  for (Eigen::Index k = 0; k < t.cols(); ++k) {
    r.push_back(t.col(k));
    r.push_back(I * t.col(k));
  }
  return r;
}

double uniform_in(Rng& rng, double a, double b) { return a + (b - a) * rng.uniform(); }

}  // namespace

CMatrix complex_hessian_radial(const Eigen::VectorXcd& u, Radial mode) {
  const double f = u.norm();
  if (f == 0.0) throw std::domain_error("complex_hessian_radial: u = 0");
  const auto N = u.size();
  CMatrix h = CMatrix::Identity(N, N) / (2.0 * f) - u * u.adjoint() / (4.0 * f * f * f);
  if (mode == Radial::Norm) return h;
  Eigen::VectorXcd g = u / (2.0 * f);
  return 0.5 / std::sqrt(f) * h - 0.25 * std::pow(f, -1.5) * g * g.adjoint();
}

CMatrix complex_hessian_fd(const ExtendedFn& f, const Eigen::VectorXcd& u, double h) {
  const auto N = u.size();
  auto dir = [&](Eigen::Index k, bool imag) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(N);
    e[k] = imag ? I : cd(1.0, 0.0);
    return e;
  };
  auto mixed = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    const long double s = f(u, h * (a + b)) - f(u, h * (a - b)) - f(u, -h * (a - b)) + f(u, -h * (a + b));
    return static_cast<double>(s / (4.0L * h * h));
  };
  CMatrix H(N, N);
  for (Eigen::Index k = 0; k < N; ++k)
    for (Eigen::Index j = 0; j < N; ++j) {
      const double xx = mixed(dir(k, false), dir(j, false));
      const double yy = mixed(dir(k, true), dir(j, true));
      const double xy = mixed(dir(k, false), dir(j, true));
      const double yx = mixed(dir(k, true), dir(j, false));
      H(k, j) = 0.25 * cd(xx + yy, yx - xy);
    }
  return H;
}

ExtendedFn radial_potential(Radial mode) {
  return [mode](const Eigen::VectorXcd& u, const Eigen::VectorXcd& d) {
    long double s = 0.0L;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      const long double re = static_cast<long double>(u[k].real()) + d[k].real();
      const long double im = static_cast<long double>(u[k].imag()) + d[k].imag();
      s += re * re + im * im;
    }
    const long double r = std::sqrt(s);
    return mode == Radial::Norm ? r : std::sqrt(r);
  };
}

double omega_hessian(const CMatrix& H, const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
  return -2.0 * (v.adjoint() * H * w).value().imag();
}

Eigen::VectorXcd flatten(const CMatrix& a) { return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size()); }

CMatrix unflatten(const Eigen::VectorXcd& v, Eigen::Index rows) {
  return Eigen::Map<const CMatrix>(v.data(), rows, v.size() / rows);
}

double omega_S(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
  return omega_hessian(complex_hessian_radial(u, Radial::Norm), v, w);
}

double omega_H(const CMatrix& a, const CMatrix& v, const CMatrix& w) {
  return std::pow(2.0, 0.25) *
         omega_hessian(complex_hessian_radial(flatten(a), Radial::SqrtNorm), flatten(v), flatten(w));
}

FormValue omega_eval(const TangentVec& v, const TangentVec& w, bool model_H) {
  if ((v.base - w.base).norm() > 1e-12 * std::max(1.0, v.base.norm()))
    throw std::invalid_argument("omega_eval: tangents at different base points");
  FormValue r;
  r.degree = 2;
  if (model_H) {
    r.value = std::pow(2.0, 0.25) *
              omega_hessian(complex_hessian_radial(v.base, Radial::SqrtNorm), v.v, w.v);
    r.tag = "omega_H";
  } else {
    r.value = omega_S(v.base, v.v, w.v);
    r.tag = "omega_S";
  }
  return r;
}

SphereTangent random_tangent_ES(const SphereCovector& x, Rng& rng) {
  const int m = static_cast<int>(x.p.size());
  SphereTangent t{HVector(m), HVector(m)};
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < 4; ++k) {
      t.pd[i].x[k] = rng.normal();
      t.qd[i].x[k] = rng.normal();
    }
  t.pd = axpy(-e_inner(t.pd, x.p), x.p, t.pd);
  t.qd = axpy(-(e_inner(x.p, t.qd) + e_inner(x.q, t.pd)), x.p, t.qd);
  return t;
}

SphereTangent random_tangent_ES0(const SphereCovector& x, Rng& rng) {
  const int m = static_cast<int>(x.p.size());
  SphereTangent t{HVector(m), HVector(m)};
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < 4; ++k) {
      t.pd[i].x[k] = rng.normal();
      t.qd[i].x[k] = rng.normal();
    }
  t.pd = axpy(-e_inner(t.pd, x.p), x.p, t.pd);
  Quaternion c = -1.0 * h_inner(x.q, t.pd);
  Quaternion r = theta(c - h_inner(t.qd, x.p));
  t.qd = hadd(t.qd, right_mul(x.p, r));
  return t;
}

SphereTangent vertical_tangent_ES0(const SphereCovector& x, Rng& rng) {
  return {HVector(x.p.size()), random_horizontal(x.p, rng)};
}

double tangent_residual_ES(const SphereCovector& x, const SphereTangent& t) {
  return std::abs(e_inner(x.p, t.pd)) + std::abs(e_inner(t.pd, x.q) + e_inner(x.p, t.qd));
}

double tangent_residual_ES0(const SphereCovector& x, const SphereTangent& t) {
  Quaternion d = h_inner(t.qd, x.p) + h_inner(x.q, t.pd);
  return tangent_residual_ES(x, t) + std::sqrt(d.norm2());
}

Eigen::VectorXcd dtau_S(const SphereCovector& x, const SphereTangent& t) {
  const double qn = e_norm(x.q);
  const double dq = e_inner(x.q, t.qd) / qn;
  BTuple b;
  b.B.resize(x.p.size());
  for (std::size_t i = 0; i < x.p.size(); ++i)
    b.B[i] = dq * rho(x.p[i]) + qn * rho(t.pd[i]) + I * rho(t.qd[i]);
  return b.vec();
}

CotangentPointH dalpha(const SphereCovector& x, const SphereTangent& t) {
  return {outer(t.pd, x.p) + outer(x.p, t.pd),
          outer(t.pd, x.q) + outer(x.p, t.qd) + outer(t.qd, x.p) + outer(x.q, t.pd)};
}

CMatrix dtau_H(const CotangentPointH& pq, const CotangentPointH& d) {
  CMatrix rp = complexify(pq.P), rq = complexify(pq.Q), rpd = complexify(d.P), rqd = complexify(d.Q);
  const double q2 = jordan_norm2(pq.Q);
  const double qn = std::sqrt(q2);
  const double ip = re_trace_product(pq.Q, d.Q);
  return 2.0 * ip * rp + q2 * rpd - (rq * rqd + rqd * rq) + (I / std::sqrt(2.0)) * (ip / qn * rq + qn * rqd);
}

CMatrix dtau_H_sphere(const SphereCovector& x, const SphereTangent& t) {
  return dtau_H(alpha(x), dalpha(x, t));
}

OneFormCheck canonical_oneform_check_S(const SphereCovector& x, const SphereTangent& t) {
  Eigen::VectorXcd u = tau_S(x).vec();
  Eigen::VectorXcd du = dtau_S(x, t);
  OneFormCheck r;
  r.potential_side = -(u.adjoint() * du).value().imag() / u.norm();
  r.canonical_side = 2.0 * e_inner(x.q, t.pd);
  r.residual = std::abs(r.potential_side - r.canonical_side);
  return r;
}

OneFormCheck canonical_oneform_check_H(const SphereCovector& x, const SphereTangent& t) {
  CotangentPointH pq = alpha(x);
  CotangentPointH d = dalpha(x, t);
  CMatrix a = tau_H(pq);
  CMatrix da = dtau_H(pq, d);
  const double f = a.norm();
  OneFormCheck r;
  r.potential_side = -(flatten(a).adjoint() * flatten(da)).value().imag() / f / (2.0 * std::sqrt(f));
  r.canonical_side = std::pow(2.0, 0.75) * metric_gH(pq.Q, d.P);
  r.residual = std::abs(r.potential_side - r.canonical_side);
  return r;
}

double dtheta_omega_residual_S(const SphereCovector& x, const SphereTangent& v, const SphereTangent& w,
                               double h) {
  auto theta_at = [&](double s, const SphereTangent& along, const SphereTangent& arg) {
    HVector q = axpy(s, along.qd, x.q);
    return e_inner(q, arg.pd);
  };
  const double vw = central_diff([&](double s) { return theta_at(s, v, w); }, h);
  const double wv = central_diff([&](double s) { return theta_at(s, w, v); }, h);
  Eigen::VectorXcd u = tau_S(x).vec();
  const double om = omega_S(u, dtau_S(x, v), dtau_S(x, w));
  return std::abs((vw - wv) - om);
}

double dtheta_omega_residual_H(const SphereCovector& x, const SphereTangent& v, const SphereTangent& w,
                               double h) {
  auto theta_at = [&](double s, const SphereTangent& along, const SphereTangent& arg) {
    HVector p = axpy(s, along.pd, x.p);
    HVector q = axpy(s, along.qd, x.q);
    QMatrix Q = outer(p, q) + outer(q, p);
    QMatrix Pd = outer(arg.pd, p) + outer(p, arg.pd);
    return 0.5 * re_trace_product(Q, Pd);
  };
  const double vw = central_diff([&](double s) { return theta_at(s, v, w); }, h);
  const double wv = central_diff([&](double s) { return theta_at(s, w, v); }, h);
  CMatrix a = tau_H(alpha(x));
  const double om = omega_H(a, dtau_H_sphere(x, v), dtau_H_sphere(x, w));
  return std::abs((vw - wv) - om);
}

double omega_closedness_residual(const Eigen::VectorXcd& u, const Eigen::VectorXcd& U,
                                 const Eigen::VectorXcd& V, const Eigen::VectorXcd& W, bool model_H,
                                 double h) {
  auto om = [&](const Eigen::VectorXcd& base, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (model_H)
      return std::pow(2.0, 0.25) * omega_hessian(complex_hessian_radial(base, Radial::SqrtNorm), a, b);
    return omega_hessian(complex_hessian_radial(base, Radial::Norm), a, b);
  };
  auto deriv = [&](const Eigen::VectorXcd& X, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return central_diff([&](double s) { return om(u + s * X, a, b); }, h);
  };
  return std::abs(deriv(U, V, W) - deriv(V, U, W) + deriv(W, U, V));
}

double hamilton_residual(const CMatrix& a, const CMatrix& y) {
  Eigen::VectorXcd uf = flatten(a), yf = flatten(y);
  const double lhs =
      std::pow(2.0, 0.25) * omega_hessian(complex_hessian_radial(uf, Radial::SqrtNorm), yf, -2.0 * I * uf);
  const double f = uf.norm();
  const double rhs = std::pow(2.0, -0.75) * (uf.adjoint() * yf).value().real() / f / (2.0 * std::sqrt(f));
  return std::abs(lhs - rhs);
}

Eigen::VectorXcd gradD(const Eigen::VectorXcd& u) {
  const auto m = u.size() / 2;
  Eigen::VectorXcd g(u.size());
  for (Eigen::Index i = 0; i < m / 2; ++i) {
    const cd z0 = u[2 * i], z1 = u[2 * i + 1], w0 = u[m + 2 * i], w1 = u[m + 2 * i + 1];
    g[2 * i] = w1;
    g[2 * i + 1] = -w0;
    g[m + 2 * i] = -z1;
    g[m + 2 * i + 1] = z0;
  }
  return g;
}

Eigen::VectorXcd Z_field(const Eigen::VectorXcd& u) { return gradD(u).conjugate() / u.squaredNorm(); }

cd sigma_S_eval(const Eigen::VectorXcd& u, const std::vector<Eigen::VectorXcd>& tangents) {
  const auto N = u.size();
  if (static_cast<Eigen::Index>(tangents.size()) != N - 1)
    throw std::invalid_argument("sigma_S_eval: need 4n+3 tangents");
  Eigen::VectorXcd g = gradD(u);
  Eigen::MatrixXcd m(N, N);
  m.col(0) = Z_field(u);
  for (Eigen::Index k = 0; k < N - 1; ++k) {
    if (std::abs((g.transpose() * tangents[k]).value()) > 1e-10 * u.norm() * tangents[k].norm())
      throw std::invalid_argument("sigma_S_eval: vector not tangent to {D = 0}");
    m.col(k + 1) = tangents[k];
  }
  return m.determinant() / std::pow(2.0 * I, static_cast<double>(N / 2));
}

std::vector<Eigen::VectorXcd> Y_fields(const BTuple& b) {
  std::vector<Eigen::VectorXcd> y;
  for (int j = 1; j <= 3; ++j) y.push_back((b * rho(Quaternion::unit(j))).vec());
  return y;
}

CMatrix dbeta(const BTuple& b, const BTuple& db) {
  const int m = static_cast<int>(b.B.size());
  const auto& J = Jmat();
  CMatrix a(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a.block<2, 2>(2 * i, 2 * j) = -(db.B[i] * J * b.B[j].transpose() * J + b.B[i] * J * db.B[j].transpose() * J);
  return a;
}

Eigen::MatrixXcd tangent_basis_S(const Eigen::VectorXcd& u) {
  Eigen::MatrixXcd row = gradD(u).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(row, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(u.size() - 1);
}

Eigen::MatrixXcd transverse_basis(const BTuple& b, double* cond) {
  Eigen::VectorXcd u = b.vec();
  Eigen::MatrixXcd t = tangent_basis_S(u);
  auto y = Y_fields(b);
  Eigen::MatrixXcd ym(u.size(), 3);
  for (int j = 0; j < 3; ++j) ym.col(j) = y[j];
  Eigen::MatrixXcd yb = orth(ym, 3, nullptr);
  Eigen::MatrixXcd comp = t - yb * (yb.adjoint() * t);
  return orth(comp, u.size() - 4, cond);
}

cd det_theta_prime(const BTuple& b) {
  Eigen::VectorXcd u = b.vec();
  HVector p = from_flat(p_of(u));
  auto y = Y_fields(b);
  Eigen::Matrix3cd m;
  for (int i = 1; i <= 3; ++i) {
    Eigen::VectorXd pe = to_flat(right_mul(p, Quaternion::unit(i)));
    for (int j = 0; j < 3; ++j) {
      const double th = pe.dot(dp_of(u, y[j]));
      const double thi = pe.dot(dp_of(u, I * y[j]));
      m(i - 1, j) = 0.5 * (th - I * thi);
    }
  }
  return m.determinant();
}

ConstantEval eval_a_S(int n, Rng& rng) {
  SphereCovector x = random_ES(n, uniform_in(rng, 0.5, 2.0), rng);
  Eigen::VectorXcd u = tau_S(x).vec();
  const int m = static_cast<int>(u.size()) - 1;
  Eigen::MatrixXcd t = tangent_basis_S(u);
  std::vector<Eigen::VectorXcd> cols;
  for (Eigen::Index k = 0; k < t.cols(); ++k) cols.push_back(t.col(k));
  const cd kappa = sigma_S_eval(u, cols);
  auto real = realify(t);
  Eigen::MatrixXd w = omega_gram(complex_hessian_radial(u, Radial::Norm), real, 1.0);
  const double omega_top = -pfaffian(w);
  ConstantEval r;
  r.value = std::norm(kappa) * blk(m) / omega_top / std::pow(u.norm(), 4 * n + 1);
  return r;
}

ConstantEval eval_b_S(int n, Rng& rng) {
  SphereCovector x = random_ES(n, uniform_in(rng, 0.5, 2.0), rng);
  Eigen::VectorXcd u = tau_S(x).vec();
  const auto N = u.size();
  const int m = static_cast<int>(N) - 1;
  Eigen::MatrixXcd t = tangent_basis_S(u);
  std::vector<Eigen::VectorXcd> cols;
  for (Eigen::Index k = 0; k < t.cols(); ++k) cols.push_back(t.col(k));
  Eigen::MatrixXcd lz(N, N);
  for (int k = 0; k < m; ++k)
    lz.col(k) = 0.5 * (dp_of(u, t.col(k)).cast<cd>() - I * dp_of(u, I * t.col(k)).cast<cd>());
  lz.col(m) = to_flat(x.p).cast<cd>();
  const cd val = lz.determinant() * std::conj(sigma_S_eval(u, cols)) * blk(m);
  Eigen::MatrixXd w = omega_gram(complex_hessian_radial(u, Radial::Norm), realify(t), 1.0);
  ConstantEval r;
  r.value = val / (-pfaffian(w)) * u.norm();
  return r;
}

ConstantEval eval_a_H(int n, Rng& rng) {
  SphereCovector x = random_ES0(n, uniform_in(rng, 0.5, 2.0), rng);
  BTuple b = tau_S(x);
  Eigen::VectorXcd u = b.vec();
  ConstantEval r;
  Eigen::MatrixXcd us = transverse_basis(b, &r.cond);
  auto ins = Y_fields(b);
  for (Eigen::Index k = 0; k < us.cols(); ++k) ins.push_back(us.col(k));
  const cd s = sigma_S_eval(u, ins);
  CMatrix a = beta(b);
  std::vector<Eigen::VectorXcd> real;
  for (Eigen::Index k = 0; k < us.cols(); ++k) {
    Eigen::VectorXcd wk = flatten(dbeta(b, BTuple::from_vec(us.col(k))));
    real.push_back(wk);
    real.push_back(I * wk);
  }
  Eigen::MatrixXd w = omega_gram(complex_hessian_radial(flatten(a), Radial::SqrtNorm), real, std::pow(2.0, 0.25));
  r.value = std::norm(s) * blk(4 * n) / pfaffian(w) / std::pow(a.norm(), 2 * n + 2);
  return r;
}

ConstantEval eval_b_H_direct(int n, Rng& rng) {
  SphereCovector x = random_ES0(n, uniform_in(rng, 0.5, 2.0), rng);
  BTuple b = tau_S(x);
  Eigen::VectorXcd u = b.vec();
  ConstantEval r;
  Eigen::MatrixXcd us = transverse_basis(b, &r.cond);
  auto ins = Y_fields(b);
  for (Eigen::Index k = 0; k < us.cols(); ++k) ins.push_back(us.col(k));
  const cd s = sigma_S_eval(u, ins);
  CMatrix a = beta(b);
  const int m = 4 * n;

  // oriented horizontal frame (h, h e_1, h e_2, h e_3, ...) at p
  std::vector<HVector> frame;
  for (int k = 0; k < n; ++k) {
    HVector h(n + 1);
    for (auto& q : h)
      for (double& v : q.x) v = rng.normal();
    for (int j = 0; j < 4; ++j) {
      HVector pe = right_mul(x.p, Quaternion::unit(j));
      h = axpy(-e_inner(h, pe), pe, h);
    }
    for (std::size_t f = 0; f < frame.size(); ++f) h = axpy(-e_inner(h, frame[f]), frame[f], h);
    h = hscale(1.0 / e_norm(h), h);
    for (int j = 0; j < 4; ++j) frame.push_back(right_mul(h, Quaternion::unit(j)));
  }
  const double eps = 1e-6;
  auto L = [&](const CMatrix& w) {
    QMatrix pd = (0.5 / eps) * (P_from_A(a + eps * w) - P_from_A(a - eps * w));
    HVector v = hq::apply(pd, x.p);
    Eigen::VectorXd c(m);
    for (int k = 0; k < m; ++k) c[k] = e_inner(frame[k], v);
    return c;
  };
  Eigen::MatrixXcd lz(m, m);
  std::vector<Eigen::VectorXcd> real;
  for (int k = 0; k < m; ++k) {
    CMatrix wk = dbeta(b, BTuple::from_vec(us.col(k)));
    lz.col(k) = 0.5 * (L(wk).cast<cd>() - I * L(I * wk).cast<cd>());
    real.push_back(flatten(wk));
    real.push_back(I * flatten(wk));
  }
  const cd val = lz.determinant() * std::conj(s) * blk(m);
  Eigen::MatrixXd w = omega_gram(complex_hessian_radial(flatten(a), Radial::SqrtNorm), real, std::pow(2.0, 0.25));
  r.value = val / pfaffian(w) / a.norm();
  return r;
}

StatedConstants stated_constants(int n) {
  StatedConstants c;
  c.a_H = std::pow(2.0, n - 2);
  c.b_H = -1.0 / (std::sqrt(2.0) * kPi * kPi);
  return c;
}

std::pair<double, double> constant_relation_sides(int n, const StatedConstants& c) {
  const double lhs = 2.0 * kPi * kPi * (c.a_S / c.b_S).real() * c.det_theta;
  const double rhs = std::pow(std::sqrt(0.5), 2 * n + 1) * c.a_H / c.b_H;
  return {lhs, rhs};
}

ConstantsRecovery constants_recover(int n, int points, Rng& rng) {
  if (n < 1) throw std::invalid_argument("constants_recover: n must be positive");
  if (points < 1) throw std::invalid_argument("constants_recover: need at least one point");
  ConstantsRecovery r;
  r.n = n;
  r.points = points;
  auto eval_cond = [&](auto fn) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      ConstantEval e = fn(n, rng);
      if (e.cond <= 1e8) return e.value;
    }
    throw std::runtime_error("constants_recover: tangent basis stays ill-conditioned");
  };
  std::vector<cd> as, bs, ah, dt, dg;
  std::vector<double> bh;
  for (int i = 0; i < points; ++i) {
    as.push_back(eval_cond(eval_a_S));
    bs.push_back(eval_cond(eval_b_S));
    ah.push_back(eval_cond(eval_a_H));
    dt.push_back(det_theta_prime(tau_S(random_ES0(n, uniform_in(rng, 0.5, 2.0), rng))));
    dg.push_back(det_theta_prime(tau_S(random_ES(n, uniform_in(rng, 0.5, 2.0), rng))));
  }
  const int direct = std::min(points, 3);
  for (int i = 0; i < direct; ++i) bh.push_back(std::abs(eval_cond(eval_b_H_direct)));

  auto mean = [](const std::vector<cd>& v) {
    cd s = 0.0;
    for (auto x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto spread = [](const std::vector<cd>& v, cd c) {
    double s = 0.0;
    for (auto x : v) s = std::max(s, std::abs(x - c));
    return s;
  };
  r.a_S = mean(as);
  r.b_S = mean(bs);
  r.a_H = mean(ah).real();
  const cd d = mean(dt);
  r.det_theta = d.real();
  r.spread_a_S = spread(as, r.a_S);
  r.spread_b_S = spread(bs, r.b_S);
  r.spread_a_H = spread(ah, mean(ah));
  r.spread_det = spread(dt, d);
  r.det_theta_generic_spread = spread(dg, mean(dg));
  double s = 0.0;
  for (double v : bh) s += v;
  r.b_H_direct = s / static_cast<double>(bh.size());
  r.b_H = std::pow(std::sqrt(0.5), 2 * n + 1) * r.a_H / (2.0 * kPi * kPi * (r.a_S / r.b_S).real() * r.det_theta);
  return r;
}

GeodesicPair geodesic_flow_pair(const SphereCovector& x, double t) {
  if (!in_E_S0(x)) throw std::invalid_argument("geodesic_flow_pair: (q,p)_H must vanish");
  if (std::abs(e_norm(x.q) - 1.0) > 1e-10) throw std::invalid_argument("geodesic_flow_pair: need |q| = 1");
  const double c = std::cos(t), s = std::sin(t);
  SphereCovector xt{axpy(s, x.q, hscale(c, x.p)), axpy(c, x.q, hscale(-s, x.p))};
  GeodesicPair g;
  g.flowed = tau_H(alpha(xt));
  g.rotated = std::exp(cd(0.0, -2.0 * t)) * tau_H(alpha(x));
  g.deviation = (g.flowed - g.rotated).norm() / g.rotated.norm();
  return g;
}

double hopf_chart_density(const Eigen::VectorXd& x) {
  if (x.size() % 4 || x.size() == 0) throw std::invalid_argument("hopf_chart_density: bad dimension");
  const int n = static_cast<int>(x.size() / 4);
  Eigen::VectorXd v(4 * n + 4);
  v << 1.0, 0.0, 0.0, 0.0, x;
  const double nv = v.norm();
  HVector p = from_flat(v / nv);
  std::vector<QMatrix> pd;
  for (int a = 0; a < 4 * n; ++a) {
    Eigen::VectorXd dv = Eigen::VectorXd::Zero(4 * n + 4);
    dv[4 + a] = 1.0;
    HVector d = from_flat(dv / nv - v * (v.dot(dv) / (nv * nv * nv)));
    pd.push_back(outer(d, p) + outer(p, d));
  }
  Eigen::MatrixXd g(4 * n, 4 * n);
  for (int a = 0; a < 4 * n; ++a)
    for (int b = a; b < 4 * n; ++b) g(a, b) = g(b, a) = 0.5 * re_trace_product(pd[a], pd[b]);
  return std::sqrt(g.determinant());
}

HopfCheck hopf_pushforward_check(int n, const MCConfig& cfg) {
  if (n < 1) throw std::invalid_argument("hopf_pushforward_check: n must be positive");
  const int d = 4 * n;
  MCStats st = mc_run(cfg, 1, [&](Rng& rng, double* out) {
    Eigen::VectorXd dir = sphere_uniform(d - 1, rng);
    const double r = std::pow(rng.uniform(), 1.0 / d);
    Eigen::VectorXd x = dir * (r / (1.0 - r));
    out[0] = hopf_chart_density(x) * std::pow(1.0 - r, -(d + 1));
  });
  HopfCheck h;
  h.volume = st.real(0, vol_sphere(d - 1) / d);
  h.exact_volume = vol_sphere(4 * n + 3) / (2.0 * kPi * kPi);

  Rng rng(cfg.seed, 0xD0A1ULL);
  for (int i = 0; i < 64; ++i) {
    HVector p = random_unit_hvector(n, rng);
    HVector hor = random_horizontal(p, rng);
    for (int a = 1; a <= 3; ++a) {
      HVector pe = right_mul(p, Quaternion::unit(a));
      h.duality_residual = std::max(h.duality_residual, std::abs(e_inner(pe, hor)));
      for (int b = 1; b <= 3; ++b) {
        HVector vb = right_mul(p, Quaternion::unit(b));
        h.duality_residual = std::max(h.duality_residual, std::abs(e_inner(pe, vb) - (a == b ? 1.0 : 0.0)));
      }
    }
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) x[k] = rng.normal();
    const double ref = std::pow(1.0 + x.squaredNorm(), -2.0 * (n + 1));
    h.density_residual = std::max(h.density_residual, std::abs(hopf_chart_density(x) - ref) / ref);
  }
  return h;
}

}  // namespace hq
