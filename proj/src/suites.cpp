#include "hq/suites.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hq/geometry.hpp"
#include "hq/spectral.hpp"

namespace hq {

namespace {

const double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
double crel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
json cj(cd z) { return complex_json(z.real(), z.imag()); }

struct Ctx {
  const SuiteConfig& cfg;
  Report& rep;

  double tol(double t) const { return t * cfg.tol_scale; }
  double sig() const { return 3.0 * cfg.tol_scale; }
  std::vector<int> ns(std::vector<int> def = {1, 2}) const { return cfg.n ? std::vector<int>{cfg.n} : def; }
  MCConfig mc(std::uint64_t def, std::uint64_t tag) const {
    MCConfig m;
    m.samples = cfg.samples ? cfg.samples : def;
    m.seed = splitmix64(cfg.seed ^ splitmix64(tag));
    m.workers = cfg.workers;
    return m;
  }
  Rng rng(std::uint64_t tag) const { return Rng(cfg.seed, 0x5EED0000ULL + tag); }
  void le(const std::string& id, const std::string& ref, double v, double t) {
    rep.add(id, ref, v <= tol(t), v, 0.0, tol(t));
  }
};

std::string nid(const std::string& s, int n) { return s + ".n" + std::to_string(n); }
std::string nlid(const std::string& s, int n, int l) { return nid(s, n) + ".l" + std::to_string(l); }

Quaternion rand_q(Rng& r) {
  Quaternion q;
  for (double& v : q.x) v = r.normal();
  return q;
}

CQuaternion rand_cq(Rng& r) {
  CQuaternion q;
  for (auto& v : q.c) v = cd(r.normal(), r.normal());
  return q;
}

QMatrix rand_jordan(int n, Rng& r) {
  QMatrix x(n + 1);
  for (auto& q : x.a) q = rand_q(r);
  return 0.5 * (x + theta_transpose(x));
}

double qdist(const Quaternion& a, const Quaternion& b) { return std::sqrt((a - b).norm2()); }

double qmat_dist(const QMatrix& a, const QMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) s += (a.a[i] - b.a[i]).norm2();
  return std::sqrt(s);
}

double qmat_norm(const QMatrix& a) {
  double s = 0.0;
  for (const auto& q : a.a) s += q.norm2();
  return std::sqrt(s);
}

// ---------------------------------------------------------------- criterion 1
void c1_algebra(Ctx& c) {
  const std::string tab = "relations e_i e_j given by the table";
  // e_i e_j by the multiplication table
  const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const double sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst, qdist(qmul(Quaternion::unit(i), Quaternion::unit(j)), sgn[i][j] * Quaternion::unit(idx[i][j])));
  c.rep.add("algebra.table", tab, worst == 0.0, worst, 0.0, 0.0);
  Quaternion e1 = Quaternion::unit(1), e2 = Quaternion::unit(2);
  c.rep.add("algebra.e1e2_minus_e3", tab, qdist(qmul(e1, e2), Quaternion::unit(3)) == 0.0,
            qdist(qmul(e1, e2), Quaternion::unit(3)), 0.0, 0.0);
  c.rep.add("algebra.expand_example", tab, qdist(qmul(e1 + e2, e1 - e2), -2.0 * Quaternion::unit(3)) == 0.0,
            qdist(qmul(e1 + e2, e1 - e2), -2.0 * Quaternion::unit(3)), 0.0, 0.0);
  Eigen::Matrix2cd r1;
  r1 << kI, 0.0, 0.0, -kI;
  c.rep.add("algebra.rho_e1", "denote the isomorphism from H to M(2,C)", (rho(e1) - r1).norm() == 0.0,
            (rho(e1) - r1).norm(), 0.0, 0.0);

  Rng r = c.rng(1);
  const int N = 10000;
  double assoc = 0, anti = 0, mult = 0, conj = 0, invol = 0, hom = 0, inv = 0, adj = 0;
  for (int s = 0; s < N; ++s) {
    Quaternion x = rand_q(r), y = rand_q(r), z = rand_q(r);
    Quaternion a = qmul(qmul(x, y), z), b = qmul(x, qmul(y, z));
    assoc = std::max(assoc, qdist(a, b) / std::sqrt(x.norm2() * y.norm2() * z.norm2()));
    anti = std::max(anti, qdist(theta(qmul(x, y)), qmul(theta(y), theta(x))) / std::sqrt(x.norm2() * y.norm2()));
    mult = std::max(mult, rel(std::sqrt(qmul(x, y).norm2()), std::sqrt(x.norm2() * y.norm2())));
    Quaternion xx = qmul(x, theta(x));
    conj = std::max(conj, qdist(xx, x.norm2() * Quaternion::unit(0)) / x.norm2());
    invol = std::max(invol, qdist(theta(theta(x)), x) / std::sqrt(x.norm2()));
    CQuaternion h = rand_cq(r), k = rand_cq(r);
    Eigen::Matrix2cd ph = rho(h), pk = rho(k);
    hom = std::max(hom, (rho(qmul(h, k)) - ph * pk).norm() / (ph.norm() * pk.norm()));
    CQuaternion back = rho_inv(ph);
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d += std::norm(back.c[i] - h.c[i]);
    inv = std::max(inv, std::sqrt(d) / ph.norm());
    adj = std::max(adj, (rho(qmul(h, theta(h))) - ph.determinant() * Eigen::Matrix2cd::Identity()).norm() / ph.squaredNorm());
  }
  c.le("algebra.associativity", tab, assoc, 1e-12);
  c.le("algebra.theta_antihomomorphism", "conjugation theta reverses products", anti, 1e-12);
  c.le("algebra.norm_multiplicative", tab, mult, 1e-12);
  c.le("algebra.x_theta_x", "conjugation theta reverses products", conj, 1e-12);
  c.le("algebra.theta_involution", "conjugation theta reverses products", invol, 1e-12);
  c.le("algebra.rho_homomorphism", "denote the isomorphism from H to M(2,C)", hom, 1e-12);
  c.le("algebra.rho_inverse", "denote the isomorphism from H to M(2,C)", inv, 1e-12);
  c.le("algebra.rho_adjugate", "denote the isomorphism from H to M(2,C)", adj, 1e-12);

  double jsym = 0, comm = 0, herm = 0, cext = 0, hpos = 0;
  for (int s = 0; s < N; ++s) {
    const int n = 1 + s % 3;
    QMatrix x = rand_jordan(n, r), y = rand_jordan(n, r), z = rand_jordan(n, r);
    const double scale = std::sqrt(jordan_norm2(x) * jordan_norm2(y) * jordan_norm2(z));
    jsym = std::max(jsym, std::abs(real_inner(jordan(x, y), z) - real_inner(x, jordan(y, z))) / scale);
    comm = std::max(comm, qmat_dist(jordan(x, y), jordan(y, x)) / std::sqrt(jordan_norm2(x) * jordan_norm2(y)));
    HVector h(n + 1);
    for (auto& q : h) q = rand_q(r);
    Quaternion hh = h_inner(h, h);
    hpos = std::max(hpos, (std::abs(hh.x[1]) + std::abs(hh.x[2]) + std::abs(hh.x[3])) / hh.x[0] +
                              (hh.x[0] < 0.0 ? 1.0 : 0.0));
    CMatrix cx = complexify(x), cy = complexify(y);
    cext = std::max(cext, std::abs(cinner(cx, cy) - real_inner(x, y)) / std::sqrt(jordan_norm2(x) * jordan_norm2(y)) +
                              rel(cx.squaredNorm(), 2.0 * jordan_norm2(x)));
    herm = std::max(herm, is_jordan(x) ? 0.0 : 1.0);
  }
  c.le("algebra.jordan_symmetry", "is called a Jordan algebra", jsym, 1e-12);
  c.le("algebra.jordan_commutative", "is called a Jordan algebra", comm, 1e-12);
  c.le("algebra.jordan_closed", "is called a Jordan algebra", herm, 0.0);
  c.le("algebra.h_inner_positive", "we regard H^n as a right module", hpos, 1e-12);
  c.le("algebra.complex_extension_norm", "can be extended to", cext, 1e-12);

  CMatrix id = complexify(QMatrix::identity(2));
  c.rep.add("algebra.complexify_identity", "can be extended to",
            (id - CMatrix::Identity(4, 4)).norm() == 0.0 && std::abs(id.squaredNorm() - 4.0) < 1e-15,
            id.squaredNorm(), 4.0, 0.0);
  QMatrix q0(2);
  q0(0, 1) = q0(1, 0) = Quaternion::unit(0);
  c.rep.add("algebra.Q0_trace", "can be extended to",
            std::abs(jordan_norm2(q0) - 2.0) < 1e-15 && std::abs(complexify(q0).squaredNorm() - 4.0) < 1e-15,
            jordan_norm2(q0), 2.0, 0.0);
}

// ---------------------------------------------------------------- criterion 2
void c2_diagram(Ctx& c) {
  const std::string ref = "the following diagram is commutative";
  for (int n : c.ns()) {
    Rng r = c.rng(20 + n);
    double worst = 0.0, inv = 0.0, sl2 = 0.0, member = 0.0;
    for (int s = 0; s < 1000; ++s) {
      SphereCovector x = random_ES0(n, 0.3 + 1.7 * r.uniform(), r);
      BTuple b = tau_S(x);
      CMatrix a1 = beta(b), a2 = tau_H(alpha(x));
      worst = std::max(worst, (a1 - a2).norm() / a2.norm());
      SphereCovector y = tau_S_inv(b);
      inv = std::max(inv, (e_norm(axpy(-1.0, y.p, x.p)) + e_norm(axpy(-1.0, y.q, x.q))) / (1.0 + e_norm(x.q)));
      if (s < 200) {
        sl2 = std::max(sl2, (beta(b * random_sl2(r)) - a1).norm() / a1.norm());
        bool ok = in_E_S0(x) && in_tE_S0(b) && in_tE_H(a1) && in_E_H(alpha(x));
        member = std::max(member, ok ? 0.0 : 1.0);
      }
    }
    c.le(nid("spaces.diagram", n), ref, worst, 1e-10);
    c.le(nid("spaces.tau_S_roundtrip", n), "is an isomorphism", inv, 1e-12);
    c.le(nid("spaces.beta_sl2_fiber", n), "a principal fiber bundle with the structure group", sl2, 1e-10);
    c.le(nid("spaces.membership_images", n), "can be rewritten as", member, 0.0);

    SphereCovector g = random_ES(n, 1.0, r);
    const double d = (beta(tau_S(g)) - tau_H(alpha(g))).norm() / tau_H(alpha(g)).norm();
    c.rep.add(nid("spaces.generic_counterexample", n), "do not coincide on the whole", d >= 1e-3, d, ">= 1e-3", 1e-3);
    c.rep.diagnostics["counterexample_" + std::to_string(n)] = json::parse(point_to_json(g));

    // Perturbations of size 1e-3 off the constraints are rejected.
    SphereCovector x = random_ES0(n, 1.0, r);
    SphereCovector px = x;
    px.q[0].x[1] += 1e-3 * e_norm(x.q);
    px.q = axpy(-e_inner(px.q, px.p), px.p, px.q);
    CMatrix a = tau_H(alpha(x));
    CMatrix pa = a;
    pa(0, 0) += 1e-3 * a.norm();
    const bool rej = !in_E_S0(px) && !in_tE_H(pa) && !in_tE_S0(tau_S(px));
    c.rep.add(nid("spaces.membership_rejects_perturbation", n), "can be rewritten as", rej, rej, true, 1e-3);
    double disp = INFINITY;
    for (int s = 0; s < 100; ++s) disp = std::min(disp, displayed_form_tES0_residual(tau_S(random_ES0(n, 1.0, r))));
    c.rep.add(nid("spaces.displayed_tES0_form_rejected", n), "can be rewritten as", disp > 1e-3, disp, "> 1e-3", 1e-3);
  }
  CotangentPointH pq0 = alpha({{Quaternion::unit(0), Quaternion()}, {Quaternion(), Quaternion::unit(0)}});
  CMatrix a0 = tau_H(pq0);
  c.rep.add("spaces.model_point", "if we take a point", (a0 - harmonic_model_point(1)).norm() < 1e-14,
            (a0 - harmonic_model_point(1)).norm(), 0.0, 1e-14);
}

// ---------------------------------------------------------------- criterion 3
void c3_norms(Ctx& c) {
  const std::string ref = "we can easily show that";
  for (int n : c.ns()) {
    Rng r = c.rng(30 + n);
    double e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0, e6 = 0;
    for (int s = 0; s < 1000; ++s) {
      SphereCovector x = random_ES0(n, 0.3 + 1.7 * r.uniform(), r);
      const double q2 = e_inner(x.q, x.q);
      BTuple b = tau_S(x);
      CotangentPointH pq = alpha(x);
      const double Q2 = jordan_norm2(pq.Q);
      CMatrix a = tau_H(pq);
      const double B2 = b.norm() * b.norm();
      e1 = std::max(e1, rel(4.0 * q2, B2));
      e2 = std::max(e2, rel(Q2, 2.0 * q2));
      e3 = std::max(e3, rel(a.squaredNorm(), 2.0 * Q2 * Q2));
      e4 = std::max(e4, rel(beta(b).norm(), B2 / std::sqrt(2.0)));
      QMatrix q3 = qmatmul(qmatmul(pq.Q, pq.Q), pq.Q);
      e5 = std::max(e5, qmat_dist(q3, (0.5 * Q2) * pq.Q) / (0.5 * Q2 * qmat_norm(pq.Q)));
      e6 = std::max(e6, rel(metric_gH(pq.Q, pq.Q), q2));
    }
    c.le(nid("spaces.norm_B", n), ref, e1, 1e-12);
    c.le(nid("spaces.norm_Q", n), ref, e2, 1e-12);
    c.le(nid("spaces.norm_A", n), ref, e3, 1e-12);
    c.le(nid("spaces.norm_beta", n), ref, e4, 1e-12);
    c.le(nid("spaces.Q_cubed", n), "Q cubed equals half the squared norm times Q", e5, 1e-12);
    c.le(nid("spaces.metric_gH", n), "defined through the Hopf fibration", e6, 1e-12);
  }
}

// ---------------------------------------------------------------- criterion 4
void c4_oneforms(Ctx& c) {
  const std::string ref = "is the canonical one-form on";
  for (int n : c.ns({1})) {
    Rng r = c.rng(40 + n);
    double ws = 0, wh = 0, vert = 0, tres = 0;
    for (int s = 0; s < 1000; ++s) {
      SphereCovector xs = random_ES(n, 0.3 + 1.7 * r.uniform(), r);
      SphereTangent ts = random_tangent_ES(xs, r);
      OneFormCheck a = canonical_oneform_check_S(xs, ts);
      ws = std::max(ws, a.residual / std::max(1.0, std::abs(a.canonical_side)));
      SphereCovector xh = random_ES0(n, 0.3 + 1.7 * r.uniform(), r);
      SphereTangent th = random_tangent_ES0(xh, r);
      tres = std::max(tres, tangent_residual_ES0(xh, th) + tangent_residual_ES(xs, ts));
      OneFormCheck b = canonical_oneform_check_H(xh, th);
      wh = std::max(wh, b.residual / std::max(1.0, std::abs(b.canonical_side)));
      if (s < 100) {
        OneFormCheck v = canonical_oneform_check_H(xh, vertical_tangent_ES0(xh, r));
        vert = std::max(vert, std::abs(v.potential_side) + std::abs(v.canonical_side));
      }
    }
    c.le(nid("geometry.oneform_S", n), ref, ws, 1e-10);
    c.le(nid("geometry.oneform_H", n), ref, wh, 1e-10);
    c.le(nid("geometry.oneform_vertical", n), ref, vert, 1e-10);
    c.le(nid("geometry.tangent_constraints", n), ref, tres, 1e-10);

    // symplectic forms: Hessians, antisymmetry, closedness, dθ = ω, Hamilton relation
    const std::string sref = "be the symplectic forms on the";
    double hfd = 0, anti = 0, dts = 0, dth = 0, clo = 0, ham = 0;
    for (int s = 0; s < 20; ++s) {
      SphereCovector x = random_ES0(n, 0.5 + r.uniform(), r);
      Eigen::VectorXcd u = tau_S(x).vec();
      CMatrix a = tau_H(alpha(x));
      Eigen::VectorXcd fa = flatten(a);
      if (s < 4) {
        for (Radial m : {Radial::Norm, Radial::SqrtNorm}) {
          const Eigen::VectorXcd& base = m == Radial::Norm ? u : fa;
          CMatrix h = complex_hessian_radial(base, m);
          hfd = std::max(hfd, (h - complex_hessian_fd(radial_potential(m), base)).norm() / h.norm());
        }
      }
      SphereTangent v = random_tangent_ES0(x, r), w = random_tangent_ES0(x, r);
      Eigen::VectorXcd dv = dtau_S(x, v), dw = dtau_S(x, w);
      anti = std::max(anti, std::abs(omega_S(u, dv, dw) + omega_S(u, dw, dv)) + std::abs(omega_S(u, dv, dv)));
      dts = std::max(dts, dtheta_omega_residual_S(x, v, w));
      dth = std::max(dth, dtheta_omega_residual_H(x, v, w));
      auto rnd = [&](Eigen::Index k) {
        Eigen::VectorXcd z(k);
        for (auto& e : z) e = cd(r.normal(), r.normal());
        return z;
      };
      clo = std::max(clo, omega_closedness_residual(u, rnd(u.size()), rnd(u.size()), rnd(u.size()), false));
      clo = std::max(clo, omega_closedness_residual(fa, rnd(fa.size()), rnd(fa.size()), rnd(fa.size()), true));
      for (int k = 0; k < 5; ++k) ham = std::max(ham, hamilton_residual(a, dtau_H_sphere(x, random_tangent_ES0(x, r))));
    }
    CMatrix h1 = complex_hessian_radial(Eigen::VectorXcd::Ones(1), Radial::Norm);
    c.rep.add("geometry.hessian_single_coordinate", sref, std::abs(h1(0, 0) - 0.25) < 1e-15, h1(0, 0).real(), 0.25, 1e-15);
    c.le(nid("geometry.hessian_fd", n), sref, hfd, 1e-6);
    c.le(nid("geometry.omega_antisymmetry", n), sref, anti, 1e-12);
    c.le(nid("geometry.dtheta_omega_S", n), sref, dts, 1e-5);
    c.le(nid("geometry.dtheta_omega_H", n), sref, dth, 1e-5);
    c.le(nid("geometry.omega_closed", n), sref, clo, 1e-5);
    c.le(nid("geometry.hamilton_relation", n), "which proves the proposition", ham, 1e-8);
  }
}

// ---------------------------------------------------------------- criterion 5
void c5_constants(Ctx& c) {
  const std::string ref = "the concrete values of these constants";
  StatedConstants st1 = stated_constants(1);
  for (int n : c.ns()) {
    Rng r = c.rng(50 + n);
    ConstantsRecovery rc = constants_recover(n, 100, r);
    StatedConstants st = stated_constants(n);
    c.rep.add(nid("geometry.a_S_modulus", n), ref, std::abs(std::abs(rc.a_S) - 1.0) <= c.tol(1e-6), std::abs(rc.a_S), 1.0, c.tol(1e-6));
    c.rep.add(nid("geometry.a_S_phase", n), ref, crel(rc.a_S, st.a_S) <= c.tol(1e-6), cj(rc.a_S), cj(st.a_S), c.tol(1e-6));
    c.rep.add(nid("geometry.b_S_modulus", n), ref, std::abs(std::abs(rc.b_S) - 1.0) <= c.tol(1e-6), std::abs(rc.b_S), 1.0, c.tol(1e-6));
    c.rep.add(nid("geometry.b_S_phase", n), ref, crel(rc.b_S, st.b_S) <= c.tol(1e-6), cj(rc.b_S), cj(st.b_S), c.tol(1e-6));
    c.rep.add(nid("geometry.a_H", n), ref, std::abs(rc.a_H - st.a_H) <= c.tol(1e-6), rc.a_H, st.a_H, c.tol(1e-6));
    c.rep.add(nid("geometry.det_theta", n), ref, std::abs(rc.det_theta - 0.125) <= c.tol(1e-6), rc.det_theta, 0.125, c.tol(1e-6));
    c.le(nid("geometry.det_theta_spread", n), ref, rc.spread_det, 1e-8);
    c.rep.add(nid("geometry.det_theta_generic_varies", n), "is not constant on all of", rc.det_theta_generic_spread > 1e-3,
              rc.det_theta_generic_spread, "> 1e-3", 1e-3);
    c.rep.add(nid("geometry.b_H_from_relation", n), ref, rel(rc.b_H, st.b_H) <= c.tol(1e-6), rc.b_H, st.b_H, c.tol(1e-6));
    auto [lhs, rhs] = constant_relation_sides(n, st);
    const double target = -kPi * kPi / 4.0;
    c.rep.add(nid("geometry.constant_relation_lhs", n), "must be constant on", rel(lhs, target) <= c.tol(1e-12), lhs, target, c.tol(1e-12));
    c.rep.add(nid("geometry.constant_relation_rhs", n), "must be constant on", rel(rhs, target) <= c.tol(1e-12), rhs, target, c.tol(1e-12));
    c.rep.diagnostics["constants_n" + std::to_string(n)] = {
        {"a_S", cj(rc.a_S)}, {"b_S", cj(rc.b_S)}, {"a_H", rc.a_H}, {"det_theta", rc.det_theta},
        {"spreads", {rc.spread_a_S, rc.spread_b_S, rc.spread_a_H, rc.spread_det}},
        {"b_H_from_relation", rc.b_H}, {"b_H_direct_modulus", rc.b_H_direct},
        {"b_H_direct_over_relation", rc.b_H_direct / std::abs(rc.b_H)}, {"orientation", rc.orientation}};

    // σ_S: normalization, alternation, holomorphy, SL(2,C) invariance
    double dz = 0, alt = 0, hol = 0, sl2 = 0;
    for (int s = 0; s < 1000; ++s) {
      BTuple b = tau_S(random_ES(n, 0.5 + r.uniform(), r));
      Eigen::VectorXcd u = b.vec();
      dz = std::max(dz, std::abs((gradD(u).transpose() * Z_field(u)).value() - 1.0));
      if (s < 50) {
        Eigen::MatrixXcd t = tangent_basis_S(u);
        std::vector<Eigen::VectorXcd> cols;
        for (Eigen::Index k = 0; k < t.cols(); ++k) cols.push_back(t.col(k));
        const cd s0 = sigma_S_eval(u, cols);
        auto sw = cols;
        std::swap(sw[0], sw[1]);
        alt = std::max(alt, std::abs(sigma_S_eval(u, sw) + s0) / std::abs(s0));
        auto hi = cols;
        hi[2] *= kI;
        hol = std::max(hol, std::abs(sigma_S_eval(u, hi) - kI * s0) / std::abs(s0));
      }
    }
    for (int s = 0; s < 50; ++s) {
      BTuple b = tau_S(random_ES0(n, 0.5 + r.uniform(), r));
      Eigen::MatrixXcd us = transverse_basis(b);
      auto ins = Y_fields(b);
      for (Eigen::Index k = 0; k < us.cols(); ++k) ins.push_back(us.col(k));
      const cd s0 = sigma_S_eval(b.vec(), ins);
      Eigen::Matrix2cd g = random_sl2(r);
      BTuple bg = b * g;
      auto ins2 = Y_fields(bg);
      for (Eigen::Index k = 0; k < us.cols(); ++k) ins2.push_back((BTuple::from_vec(us.col(k)) * g).vec());
      sl2 = std::max(sl2, std::abs(sigma_S_eval(bg.vec(), ins2) - s0) / std::abs(s0));
    }
    c.le(nid("geometry.dD_of_Z", n), "Since dD(Z) is identically one", dz, 1e-12);
    c.le(nid("geometry.sigma_alternating", n), "the interior product with the vector field", alt, 1e-10);
    c.le(nid("geometry.sigma_holomorphic", n), "the interior product with the vector field", hol, 1e-10);
    c.le(nid("geometry.sigma_sl2_invariant", n), "a principal fiber bundle with the structure group", sl2, 1e-8);

    HopfCheck h = hopf_pushforward_check(n, c.mc(400000, 500 + n));
    c.rep.add(nid("geometry.hopf_volume", n), "the fiber integration of the Hopf bundle",
              std::abs(h.volume.real() - h.exact_volume) <= c.sig() * h.volume.stderr_, h.volume.real(), h.exact_volume,
              c.sig() * h.volume.stderr_, h.volume.stderr_);
    c.le(nid("geometry.hopf_duality", n), "the fiber integration of the Hopf bundle", h.duality_residual, 1e-12);
    c.le(nid("geometry.hopf_density", n), "the fiber integration of the Hopf bundle", h.density_residual, 1e-12);
  }
  (void)st1;
}

// ---------------------------------------------------------------- criterion 6
void c6_geodesic(Ctx& c) {
  const std::string ref = "the Hamilton flow whose";
  for (int n : c.ns({1})) {
    Rng r = c.rng(60 + n);
    double worst = 0, ret = 0, half = INFINITY;
    for (int s = 0; s < 100; ++s) {
      SphereCovector x = random_ES0(n, 1.0, r);
      for (int k = 0; k <= 32; ++k) {
        const double t = k < 32 ? 0.1 * k : kPi;
        worst = std::max(worst, geodesic_flow_pair(x, t).deviation);
      }
      CMatrix a0 = tau_H(alpha(x));
      ret = std::max(ret, (geodesic_flow_pair(x, kPi).flowed - a0).norm() / a0.norm());
      half = std::min(half, (geodesic_flow_pair(x, kPi / 2).flowed - a0).norm() / a0.norm());
    }
    c.le(nid("geometry.geodesic_flow", n), ref, worst, 1e-10);
    c.le(nid("geometry.classical_period_pi", n), "is periodic with the period", ret, 1e-10);
    c.rep.add(nid("geometry.no_return_at_half_period", n), "is periodic with the period", half > 1.0, half, "> 1", 1.0);
  }
}

// ---------------------------------------------------------------- criterion 7
void c7_spectral(Ctx& c) {
  const std::string dref = "It is known that the dimension";
  bool dims_ok = true;
  json dims = json::array();
  for (int l = 0; l <= 10; ++l) {
    const std::int64_t d = dim_Hl(1, l), e = (l + 1) * (l + 2) * (2 * l + 3) / 6;
    dims_ok = dims_ok && d == e;
    dims.push_back(d);
  }
  c.rep.add("spectral.dim_S4_harmonics", dref, dims_ok, dims, "(l+1)(l+2)(2l+3)/6", 0.0);
  bool integral = true;
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= 20; ++l) try {
        (void)dim_Hl(n, l);
      } catch (const std::exception&) {
        integral = false;
      }
  c.rep.add("spectral.dim_integral", dref, integral, integral, true, 1e-6);
  c.rep.add("spectral.lambda_example", "with the eigenvalue", lambda_l(1, 1) == 16.0, lambda_l(1, 1), 16.0, 0.0);
  double lid = 0.0, desc = 0.0;
  for (int n = 1; n <= 8; ++n)
    for (int l = 0; l <= 1000000; ++l) lid = std::max(lid, lambda_identity_residual(n, l));
  for (int n = 1; n <= 8; ++n)
    for (int l = 0; l <= 1000; ++l) desc = std::max(desc, sphere_descent_check(n, l));
  c.rep.add("spectral.lambda_identity", "with the eigenvalue", lid == 0.0, lid, 0.0, 0.0);
  c.rep.add("spectral.sphere_descent", "is isomorphic to the sphere harmonics", desc == 0.0, desc, 0.0, 0.0);

  const std::string href = "a harmonic polynomial and";
  for (int n : c.ns()) {
    Rng r = c.rng(70 + n);
    HarmonicityCertificate m = harmonicity_certificate(harmonic_model_point(n), 3, r);
    c.le(nid("spectral.model_point_harmonic", n), "then we have the result", std::max(m.trace_residual, m.null_gradient_residual), 1e-12);
    double tr = 0, ng = 0, fd = 0, sp = 0, qf = 0;
    for (int s = 0; s < 100; ++s) {
      CMatrix a = random_tEH(n, r);
      HarmonicityCertificate h = harmonicity_certificate(a, 1 + s % 3, r);
      tr = std::max(tr, h.trace_residual);
      ng = std::max(ng, h.null_gradient_residual);
      fd = std::max(fd, h.fd_laplacian_residual);
      if (s < 10) {
        sp = std::max(sp, sp1_invariance_check(a, 100, r));
        QuadForm q = build_quadform(a);
        for (int k = 0; k < 100; ++k) {
          HVector p = random_unit_hvector(n, r);
          qf = std::max(qf, std::abs(q(to_flat(p)) - pair_PA(p, a)) / a.norm());
        }
      }
    }
    c.le(nid("spectral.harmonic_trace", n), href, tr, 1e-10);
    c.le(nid("spectral.harmonic_null_gradient", n), href, ng, 1e-10);
    c.le(nid("spectral.fd_laplacian", n), href, fd, 1e-6);
    c.le(nid("spectral.sp1_invariance", n), "harmonic polynomial and Sp(1)-invariant", sp, 1e-12);
    c.le(nid("spectral.quadform_reproduces", n), href, qf, 1e-12);
    CMatrix a = random_tEH(n, r);
    c.rep.add(nid("spectral.sp1_identity", n), "harmonic polynomial and Sp(1)-invariant",
              sp1_invariance_at(a, random_unit_hvector(n, r), Quaternion::unit(0)) == 0.0, 0.0, 0.0, 0.0);
    const double mixed = sp1_invariance_check(a, 100, r, true);
    c.rep.add(nid("spectral.sp1_mixed_control", n), "harmonic polynomial and Sp(1)-invariant", mixed > 1e-2, mixed, "> 1e-2", 1e-2);
    HarmonicityCertificate neg = harmonicity_certificate_unchecked(random_hermitian_pair(n, r), 2, r);
    const double nv = std::max(neg.trace_residual, neg.null_gradient_residual);
    c.rep.add(nid("spectral.negative_control", n), href, nv > 1e-2, nv, "> 1e-2", 1e-2);
  }
  c.rep.tables["spectral"] = spectral_table(c.cfg.n ? c.cfg.n : 1, c.cfg.lmax);
}

// ---------------------------------------------------------------- criterion 8
void c8_I_l(Ctx& c) {
  const std::string ref = "is independent of";
  for (int n : c.ns()) {
    auto v = I_l_mc_all(n, 3, c.mc(10000000, 800 + n));
    for (int l = 0; l <= 3; ++l) {
      const double ex = I_l(n, l);
      const double tol = std::max(c.sig() * v[l].stderr_, 1e-12 * ex);
      c.rep.add(nlid("quantization.I_l_mc", n, l), ref, std::abs(v[l].real() - ex) <= tol, v[l].real(), ex, tol, v[l].stderr_);
    }
    if (n == 1) {
      const double vp = kPi * kPi / 6.0;
      c.rep.add("quantization.I_0_volume", "a reduction of the integral on", rel(I_l(1, 0), vp) <= 1e-14 &&
                std::abs(v[0].real() - vp) <= std::max(c.sig() * v[0].stderr_, 1e-12 * vp), I_l(1, 0), vp, 1e-12);
    }
  }
  MCEstimate s7 = S7_moment_mc(1, c.mc(10000000, 899));
  const double ex = 2.0 * std::pow(kPi, 4) / 15.0;
  c.rep.add("quantization.S7_moment", "a reduction of the integral on", std::abs(s7.real() - ex) <= c.sig() * s7.stderr_ &&
            rel(S7_moment(1), ex) <= 1e-14, s7.real(), ex, c.sig() * s7.stderr_, s7.stderr_);
}

// ---------------------------------------------------------------- criterion 9
void c9_b_l(Ctx& c, bool with_mc) {
  const std::string ref = "the constant b_l is expressed as";
  json chain = json::array();
  for (int n : c.ns())
    for (int l = 0; l <= 3; ++l) {
      const double cl = b_l(n, l), sa = b_l_semianalytic(n, l);
      c.rep.add(nlid("constants.b_l_semianalytic", n, l), ref, rel(cl, sa) <= c.tol(1e-8), cl, sa, c.tol(1e-8));
      c.rep.add(nlid("constants.b_l_positive", n, l), ref, cl > 0.0, cl, "> 0", 0.0);
      chain.push_back({{"n", n}, {"l", l}, {"closed_over_chain", cl / sa}});
    }
  c.rep.diagnostics["b_l_closed_over_chain"] = chain;
  if (!with_mc) return;
  json mcd = json::array();
  for (int n : c.ns({1}))
    for (int l = 0; l <= 1; ++l) {
      Rng r = c.rng(900 + 10 * n + l);
      CMatrix ap = random_unit_tEH(n, r);
      MCEstimate b = b_l_mc(n, l, ap, c.mc(400000, 910 + 10 * n + l));
      const double cl = b_l(n, l), sa = b_l_semianalytic(n, l);
      const double tol = std::max(c.sig() * b.stderr_, 1e-12 * cl);
      c.rep.add(nlid("quantization.b_l_mc", n, l), "This constant b_l satisfies", std::abs(b.real() - cl) <= tol, b.real(), cl, tol, b.stderr_);
      c.rep.add(nlid("quantization.b_l_mc_precision", n, l), "This constant b_l satisfies", b.stderr_ <= 0.01 * b.real(),
                b.stderr_ / b.real(), "<= 0.01", 0.01);
      mcd.push_back({{"n", n}, {"l", l}, {"mc", b.real()}, {"stderr", b.stderr_}, {"chain", sa},
                     {"z_vs_chain", b.stderr_ > 0 ? (b.real() - sa) / b.stderr_ : (b.real() - sa) / sa * 1e12},
                     {"mc_over_closed", b.real() / cl}});
    }
  c.rep.diagnostics["b_l_mc"] = mcd;
}

// ---------------------------------------------------------------- criterion 10
void c10_a_c(Ctx& c) {
  json cd_ = json::array();
  for (int n : c.ns())
    for (int l = 0; l <= 5; ++l) {
      const double a = a_l(n, l);
      QuadResult aq = a_l_quadrature(n, l);
      c.rep.add(nlid("constants.a_l_quadrature", n, l), "with a suitable constant", rel(a, aq.value) <= c.tol(1e-8), a, aq.value, c.tol(1e-8));
      const double cc = c_l(n, l);
      QuadResult cq = c_l_quadrature(n, l);
      c.rep.add(nlid("constants.c_l_quadrature", n, l), "As before, to determine the constant", rel(cc, cq.value) <= c.tol(1e-8), cc, cq.value,
                c.tol(1e-8));
      c.rep.add(nlid("constants.a_c_positive", n, l), "with a suitable constant", a > 0 && cc > 0, a > 0 && cc > 0, true, 0.0);
      cd_.push_back({{"n", n}, {"l", l}, {"c_closed_over_quadrature", cc / cq.value}, {"c_chain_over_quadrature", c_l_chain(n, l) / cq.value},
                     {"quadrature_error_estimate", cq.error / cq.value}});
    }
  c.rep.diagnostics["c_l_vs_quadrature"] = cd_;
  for (int n : c.ns()) {
    double worst = 0.0, worst_chain = 0.0;
    for (int l = 0; l <= 50; ++l) {
      worst = std::max(worst, std::abs(std::expm1(log_ratio(n, l) - log_ratio_display(n, l))));
      worst_chain = std::max(worst_chain, std::abs(std::expm1(log_c_l_chain(n, l) - log_a_l(n, l) - log_ratio_display(n, l))));
    }
    c.rep.diagnostics["ratio_display_n" + std::to_string(n)] = {{"closed_c_over_a", worst}, {"chain_c_over_a", worst_chain}};
  }
  // ⟨P₀, A⟩ = ½‖Q‖² on the fiber over P₀
  HVector p0{Quaternion::unit(0), Quaternion()};
  HVector q{Quaternion(), Quaternion::unit(0)};
  CMatrix a = tau_H_of_ES0(p0, q);
  const cd v = pair_PA(p0, a);
  c.rep.add("constants.fiber_pairing", "equals half the squared norm of Q", std::abs(v - 1.0) <= 1e-14, cj(v), 1.0, 1e-14);
}

// ---------------------------------------------------------------- criterion 11
void c11_norms(Ctx& c) {
  const std::string ref = "The norm of T on";
  for (int n = 1; n <= 4; ++n) {
    if (c.cfg.n && c.cfg.n != n) continue;
    double worst = 0.0;
    bool mono = true;
    double prev = INFINITY;
    for (int l = 0; l <= 50; ++l) {
      worst = std::max(worst, std::abs(std::expm1(log_T_norm(n, l) - log_T_norm_display(n, l))));
      const double t = T_norm(n, l);
      mono = mono && t < prev;
      prev = t;
    }
    c.le(nid("constants.T_norm_display", n), ref, worst, 1e-10);
    const double lim = T_norm_limit(n), ex = std::sqrt(2.0) / kPi;
    c.rep.add(nid("constants.T_norm_limit", n), "asymptotic property of products of", std::abs(lim - ex) <= c.tol(1e-3), lim, ex, c.tol(1e-3));
    c.rep.add(nid("constants.T_norm_monotone", n), ref, mono && prev > ex, prev, "strictly decreasing", 0.0);
    c.rep.add(nid("constants.T_norm_prefactor", n), ref, rel(T_norm_prefactor(n), ex) <= 1e-14, T_norm_prefactor(n), ex, 1e-14);
    const double rl = ratio_limit(n);
    c.rep.add(nid("constants.ratio_limit", n), "converges to", std::abs(rl - kPi / 2) <= c.tol(1e-3), rl, kPi / 2, c.tol(1e-3));
    const double chain_lim = std::exp(log_a_l(n, 1e6) - 0.5 * log_b_l_chain(n, 1e6));
    c.rep.diagnostics["T_norm_limit_with_chain_b_n" + std::to_string(n)] = chain_lim;
  }
}

// ---------------------------------------------------------------- criterion 12
void c12_operators(Ctx& c) {
  json diag = json::array();
  for (int n : c.ns({1})) {
    std::vector<cd> t0;
    for (int l = 0; l <= 1; ++l)
      for (int k = 0; k < 3; ++k) {
        Rng r = c.rng(1200 + 100 * n + 10 * l + k);
        HlFunction phi = random_Hl_function(n, l, 2, r);
        HVector pp = random_unit_hvector(n, r);
        const cd fv = phi(pp);
        FiberFunction g = Al_image(phi);
        MCEstimate t = T_apply(g, pp, c.mc(1000000, 1210 + 100 * n + 10 * l + k));
        const cd want = a_l(n, l) * fv;
        const std::string id = nlid("quantization.T_A_l", n, l) + ".pair" + std::to_string(k);
        c.rep.add(id, "T composed with A_l is a_l times the identity", crel(t.value, want) <= c.tol(0.02), cj(t.value), cj(want), c.tol(0.02),
                  t.stderr_ / std::abs(want));
        MCEstimate ts = TS_tilde_apply(g, pp, c.mc(1000000, 1250 + 100 * n + 10 * l + k));
        const cd wc = c_l(n, l) * fv;
        const std::string ids = nlid("quantization.T_tilde_A_l", n, l) + ".pair" + std::to_string(k);
        c.rep.add(ids, "so that it can descend", crel(ts.value, wc) <= c.tol(0.02), cj(ts.value), cj(wc), c.tol(0.02),
                  ts.stderr_ / std::abs(wc));
        diag.push_back({{"n", n}, {"l", l}, {"pair", k}, {"T_over_a", std::abs(t.value / want)},
                        {"T_tilde_over_c_closed", std::abs(ts.value / wc)},
                        {"T_tilde_over_c_chain", std::abs(ts.value / (c_l_chain(n, l) * fv))}});
        if (l == 0) t0.push_back(t.value / fv);
      }
    double spread = 0.0;
    for (auto v : t0) spread = std::max(spread, crel(v, t0[0]));
    c.le(nid("quantization.T_constant_invariant", n), "T composed with A_l is a_l times the identity", spread, 1e-10);
  }
  c.rep.diagnostics["operator_identities"] = diag;
}

// ---------------------------------------------------------------- criterion 13
void c13_flow(Ctx& c) {
  const std::string ref = "The following diagram is commutative";
  double sc = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= 50; ++l)
      for (double t : {0.1, 0.7, 1.3, 2.9, kPi, 2 * kPi}) {
        FlowCheck f = flow_commutation_check(n, l, t, MCConfig{2, 1, 1, 2});
        sc = std::max(sc, f.scalar_residual);
      }
  c.le("quantization.flow_scalar_phase", ref, sc, 1e-12);
  FlowCheck ex = flow_commutation_check(1, 1, 0.7, MCConfig{2, 1, 1, 2});
  const cd want = std::exp(cd(0.0, -3.5));
  c.rep.add("quantization.flow_phase_example", "we should regard the", crel(ex.phase_degree, want) <= 1e-15 && crel(ex.phase_spectral, want) <= 1e-14,
            cj(ex.phase_degree), cj(want), 1e-14);
  for (int n : c.ns({1})) {
    for (int l = 0; l <= 1; ++l) {
      FlowCheck f = flow_commutation_check(n, l, 0.7, c.mc(200000, 1300 + 10 * n + l));
      const double tol = c.sig() * f.operator_stderr + 1e-12 * std::abs(f.lhs.value);
      c.rep.add(nlid("quantization.flow_operator", n, l), ref, f.operator_residual <= tol, f.operator_residual, 0.0, tol, f.operator_stderr);
      c.rep.add(nlid("quantization.quantum_phase_pi", n, l), "is periodic with the period", std::abs(f.quantum_phase_pi + 1.0) <= 1e-12,
                cj(f.quantum_phase_pi), -1.0, 1e-12);
      FlowCheck p2 = flow_commutation_check(n, l, 2 * kPi, MCConfig{2, 1, 1, 2});
      c.rep.add(nlid("quantization.quantum_period_2pi", n, l), "is periodic with the period", std::abs(p2.phase_degree - 1.0) <= 1e-12,
                cj(p2.phase_degree), 1.0, 1e-12);
      c.le(nlid("quantization.classical_return_pi", n, l), "is periodic with the period", f.classical_return_pi, 1e-12);
    }
  }
}

// ---------------------------------------------------------------- criterion 14
void c14_kernel(Ctx& c) {
  const std::string ref = "has the reproducing kernel";
  const double l4 = 1e4;
  for (int n : c.ns({1, 2, 3, 4})) {
    const double g = b_ratio(n, l4) * std::pow(l4, 4) / std::pow(kPi, 4);
    c.rep.add(nid("kernel.b_growth", n), "O(l^{-4})", std::abs(g - 1.0) <= c.tol(1e-2), g, 1.0, c.tol(1e-2));
    double worst = 0.0;
    for (int l = 0; l <= 500; ++l) worst = std::max(worst, b_ratio(n, l) / b_ratio_bound(n, l));
    c.rep.add(nid("kernel.ratio_bound_valid", n), "O(l^{-4})", worst <= 1.0, worst, "<= 1", 0.0);
    bool conv = true;
    json series = json::array();
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      KernelSeries ks = kernel_diag(n, x, 200, c.cfg.kernel_b);
      bool sup = true;
      for (std::size_t l = 2; l < ks.log_r.size(); ++l)
        sup = sup && (ks.log_r[l] - ks.log_r[l - 1]) < (ks.log_r[l - 1] - ks.log_r[l - 2]);
      conv = conv && sup && ks.tail_bound <= 1e-12 * ks.value && std::isfinite(ks.value);
      series.push_back({{"norm", x}, {"value", ks.value}, {"tail_bound", ks.tail_bound}, {"tail_ratio", ks.tail_ratio}});
    }
    c.rep.add(nid("kernel.series_converges", n), "holomorphic on all of the", conv, series, "certified tail <= 1e-12 relative", 1e-12);
  }

  json diag = json::array();
  for (int n : c.ns({1})) {
    Rng r = c.rng(1400 + n);
    struct F {
      cd c0, c1;
      HVector u;
    };
    std::vector<F> fs{{1.0, 0.0, random_unit_hvector(n, r)},
                      {cd(r.normal(), r.normal()), cd(r.normal(), r.normal()), random_unit_hvector(n, r)},
                      {0.0, cd(r.normal(), r.normal()), random_unit_hvector(n, r)}};
    std::vector<CMatrix> aps;
    for (int k = 0; k < 2; ++k) aps.push_back(random_tEH(n, r) * (0.5 + 2.5 * r.uniform()));
    int idx = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < aps.size(); ++j, ++idx) {
        auto run = [&](BNorm bn) {
          return kernel_reproduce_check(n, fs[i].c0, fs[i].c1, fs[i].u, aps[j], c.mc(1000000, 1410 + 100 * n + idx), bn);
        };
        ReproduceCheck rc = run(c.cfg.kernel_b);
        const std::string id = nid("kernel.reproduce", n) + ".f" + std::to_string(i) + ".a" + std::to_string(j);
        const double tol = c.sig() * rc.reproduced.stderr_;
        c.rep.add(id, ref, std::abs(rc.reproduced.value - rc.expected) <= tol, cj(rc.reproduced.value), cj(rc.expected), tol,
                  rc.reproduced.stderr_);
        const double slack = c.sig() * rc.kernel_diag * rc.norm2.stderr_;
        c.rep.add(nid("kernel.bound", n) + ".f" + std::to_string(i) + ".a" + std::to_string(j), "the bound by the kernel norm",
                  rc.bound_lhs <= rc.bound_rhs + slack, rc.bound_lhs, rc.bound_rhs, slack, rc.kernel_diag * rc.norm2.stderr_);
        json d = {{"f", i}, {"a", j}, {"reproduced_over_expected", std::abs(rc.reproduced.value / rc.expected)},
                  {"bound_lhs_over_rhs", rc.bound_lhs / rc.bound_rhs}};
        if (c.cfg.kernel_b == BNorm::Displayed) {
          ReproduceCheck ch = run(BNorm::Chain);
          d["chain_b"] = {{"z", std::abs(ch.reproduced.value - ch.expected) / ch.reproduced.stderr_},
                          {"bound_lhs_over_rhs", ch.bound_lhs / ch.bound_rhs}};
        }
        diag.push_back(d);
      }
    // orthogonality of P_l for l ≠ l′
    for (auto [l1, l2] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
      FiberFunction f = generator(random_unit_hvector(n, r), l1), g = generator(random_unit_hvector(n, r), l2);
      MCConfig m = c.mc(1000000, 1490 + 10 * l1 + l2);
      MCEstimate fg = pairing_mc(n, f, g, m);
      const double nf = std::sqrt(pairing_mc(n, f, f, m).real() * pairing_mc(n, g, g, m).real());
      const std::string id = nid("kernel.orthogonality", n) + ".l" + std::to_string(l1) + "_" + std::to_string(l2);
      c.rep.add(id, "are orthogonal for l different from l'", std::abs(fg.value) <= c.sig() * fg.stderr_, std::abs(fg.value) / nf, 0.0,
                c.sig() * fg.stderr_ / nf, fg.stderr_ / nf);
    }
  }
  c.rep.diagnostics["kernel_reproduction"] = diag;
  c.rep.diagnostics["kernel_b_normalization"] = c.cfg.kernel_b == BNorm::Displayed ? "displayed" : "chain";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "spaces", "geometry", "spectral", "constants", "quantization", "kernel", "all"};
  return names;
}

std::vector<int> suite_criteria(const std::string& name) {
  static const std::map<std::string, std::vector<int>> m{
      {"algebra", {1}},           {"spaces", {2, 3}},
      {"geometry", {4, 5, 6}},    {"spectral", {7}},
      {"constants", {9, 10, 11}}, {"quantization", {8, 9, 10, 12, 13}},
      {"kernel", {14}},           {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}}};
  auto it = m.find(name);
  if (it == m.end()) throw std::invalid_argument("unknown suite: " + name);
  return it->second;
}

json config_json(const SuiteConfig& cfg) {
  return {{"n", cfg.n == 0 ? json("default") : json(cfg.n)},
          {"lmax", cfg.lmax},
          {"samples", cfg.samples == 0 ? json("default") : json(cfg.samples)},
          {"seed", cfg.seed},
          {"tol_scale", cfg.tol_scale},
          {"kernel_b", cfg.kernel_b == BNorm::Displayed ? "displayed" : "chain"},
          {"mc_gate_stderr", 3.0 * cfg.tol_scale}};
}

std::string make_timestamp(const SuiteConfig& cfg) {
  if (!cfg.timestamp_now) return "seed:" + std::to_string(cfg.seed);
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

namespace {

void run_into(int k, const SuiteConfig& cfg, Report& rep, bool b_mc) {
  Ctx c{cfg, rep};
  switch (k) {
    case 1: c1_algebra(c); break;
    case 2: c2_diagram(c); break;
    case 3: c3_norms(c); break;
    case 4: c4_oneforms(c); break;
    case 5: c5_constants(c); break;
    case 6: c6_geodesic(c); break;
    case 7: c7_spectral(c); break;
    case 8: c8_I_l(c); break;
    case 9: c9_b_l(c, b_mc); break;
    case 10: c10_a_c(c); break;
    case 11: c11_norms(c); break;
    case 12: c12_operators(c); break;
    case 13: c13_flow(c); break;
    case 14: c14_kernel(c); break;
    default: throw std::invalid_argument("criterion must be in 1..14");
  }
}

void validate(const SuiteConfig& cfg) {
  if (cfg.n < 0 || cfg.n > 4) throw std::invalid_argument("--n must be in 1..4");
  if (cfg.lmax < 0 || cfg.lmax > 1000) throw std::invalid_argument("--lmax must be in 0..1000");
  if (!(cfg.tol_scale > 0.0)) throw std::invalid_argument("--tol-scale must be positive");
  if (cfg.samples == 1) throw std::invalid_argument("--samples must be at least 2");
}

}  // namespace

Report run_criterion(int k, const SuiteConfig& cfg) {
  validate(cfg);
  Report rep;
  rep.suite = "criterion-" + std::to_string(k);
  rep.timestamp = make_timestamp(cfg);
  rep.config = config_json(cfg);
  run_into(k, cfg, rep, true);
  return rep;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  auto ks = suite_criteria(name);
  validate(cfg);
  Report rep;
  rep.suite = name;
  rep.timestamp = make_timestamp(cfg);
  rep.config = config_json(cfg);
  rep.config["criteria"] = ks;
  for (int k : ks) run_into(k, cfg, rep, name != "constants");
  if (name == "constants" || name == "all")
    rep.tables["constants"] = constants_table(cfg.n ? cfg.n : 1, 0, std::min(cfg.lmax, 50));
  if (name == "kernel" || name == "all")
    rep.tables["kernel"] = kernel_table(cfg.n ? cfg.n : 1, std::max(cfg.lmax, 10), 1.0, cfg.kernel_b);
  return rep;
}

json spectral_table(int n, int lmax) {
  json t = json::array();
  for (int l = 0; l <= lmax; ++l)
    t.push_back({{"n", n}, {"l", l}, {"dim", dim_Hl(n, l)}, {"lambda", lambda_l(n, l)},
                 {"sqrt_lambda_shift", std::sqrt(lambda_l(n, l) + (2.0 * n + 1) * (2.0 * n + 1))},
                 {"lambda_identity_residual", lambda_identity_residual(n, l)},
                 {"sphere_descent_residual", sphere_descent_check(n, l)}});
  return t;
}

json constants_table(int n, int l0, int l1) {
  if (l0 < 0 || l1 < l0) throw std::invalid_argument("l-range must satisfy 0 <= A <= B");
  json t = json::array();
  for (int l = l0; l <= l1; ++l) {
    ConstantsRow r = constants_row(n, l);
    t.push_back({{"n", r.n}, {"l", r.l}, {"I_l", r.I_l}, {"b_l", r.b_l}, {"a_l", r.a_l}, {"c_l", r.c_l},
                 {"T_norm", r.T_norm}, {"ratio", r.ratio}, {"b_l_semianalytic", r.b_l_chain}, {"a_l_quadrature", r.a_l_quad},
                 {"c_l_quadrature", r.c_l_quad}, {"c_l_chain", r.c_l_chain}, {"T_norm_display", r.T_norm_display},
                 {"ratio_display", r.ratio_display},
                 {"b_l_oracle_match", rel(r.b_l, r.b_l_chain) <= 1e-8},
                 {"a_l_oracle_match", rel(r.a_l, r.a_l_quad) <= 1e-8},
                 {"c_l_oracle_match", rel(r.c_l, r.c_l_quad) <= 1e-8},
                 {"T_norm_display_match", rel(r.T_norm, r.T_norm_display) <= 1e-10}});
  }
  return t;
}

json kernel_table(int n, int lmax, double norm, BNorm bn) {
  KernelSeries ks = kernel_diag(n, norm, lmax, bn, 1.0);
  json t = json::array();
  for (int l = 0; l <= lmax; ++l) t.push_back({{"l", l}, {"r_l", std::exp(ks.log_r[l])}, {"term", ks.terms[l]}});
  return {{"n", n}, {"norm", norm}, {"L", lmax}, {"value", ks.value}, {"tail_bound", ks.tail_bound}, {"tail_ratio", ks.tail_ratio},
          {"b_normalization", bn == BNorm::Displayed ? "displayed" : "chain"}, {"terms", t}};
}

}  // namespace hq
