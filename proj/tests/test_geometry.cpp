#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hq/geometry.hpp"

using namespace hq;
constexpr double pi = std::numbers::pi;

TEST_CASE("radial Hessians against extended-precision differences") {
  Rng r(13, 1);
  SphereCovector x = random_ES0(1, 1.2, r);
  Eigen::VectorXcd u = tau_S(x).vec();
  CMatrix h = complex_hessian_radial(u, Radial::Norm);
  CHECK((h - complex_hessian_fd(radial_potential(Radial::Norm), u)).norm() < 1e-6 * h.norm());
  CHECK((h - h.adjoint()).norm() < 1e-14 * h.norm());
  CMatrix h2 = complex_hessian_radial(2.0 * u, Radial::Norm);
  CHECK((2.0 * h2 - h).norm() < 1e-13 * h.norm());
  CHECK(complex_hessian_radial(Eigen::VectorXcd::Ones(1), Radial::Norm)(0, 0).real() == doctest::Approx(0.25));
}

TEST_CASE("canonical one-forms and symplectic forms") {
  Rng r(13, 2);
  SphereCovector x = random_ES0(1, 0.8, r);
  for (int k = 0; k < 5; ++k) {
    SphereTangent v = random_tangent_ES0(x, r), w = random_tangent_ES0(x, r);
    CHECK(tangent_residual_ES0(x, v) < 1e-12);
    OneFormCheck s = canonical_oneform_check_S(x, v);
    OneFormCheck h = canonical_oneform_check_H(x, v);
    CHECK(s.residual < 1e-10 * std::max(1.0, std::abs(s.canonical_side)));
    CHECK(h.residual < 1e-10 * std::max(1.0, std::abs(h.canonical_side)));
    CHECK(dtheta_omega_residual_S(x, v, w) < 1e-5);
    CHECK(dtheta_omega_residual_H(x, v, w) < 1e-5);
    Eigen::VectorXcd u = tau_S(x).vec(), dv = dtau_S(x, v), dw = dtau_S(x, w);
    CHECK(omega_S(u, dv, dw) == doctest::Approx(-omega_S(u, dw, dv)));
    CMatrix a = tau_H(alpha(x));
    CHECK(hamilton_residual(a, dtau_H_sphere(x, v)) < 1e-8);
  }
}

TEST_CASE("holomorphic volume form and dD(Z)") {
  Rng r(13, 3);
  Eigen::VectorXcd u = tau_S(random_ES(1, 1.0, r)).vec();
  CHECK(std::abs((gradD(u).transpose() * Z_field(u)).value() - 1.0) < 1e-12);
  Eigen::MatrixXcd t = tangent_basis_S(u);
  CHECK(t.cols() == u.size() - 1);
  CHECK((gradD(u).transpose() * t).norm() < 1e-12);
  CHECK_THROWS(sigma_S_eval(u, {Z_field(u), Z_field(u), Z_field(u), Z_field(u), Z_field(u), Z_field(u), Z_field(u)}));
}

TEST_CASE("recovered constants match the stated ones") {
  Rng r(13, 4);
  ConstantsRecovery c = constants_recover(1, 8, r);
  StatedConstants s = stated_constants(1);
  CHECK(std::abs(c.a_S - s.a_S) < 1e-6);
  CHECK(std::abs(c.b_S - s.b_S) < 1e-6);
  CHECK(c.a_H == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(c.det_theta == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(c.spread_det < 1e-8);
  CHECK(c.det_theta_generic_spread > 1e-3);
  CHECK(stated_constants(2).a_H == 1.0);
  for (int n = 1; n <= 3; ++n) {
    auto [lhs, rhs] = constant_relation_sides(n, stated_constants(n));
    CHECK(lhs == doctest::Approx(-pi * pi / 4).epsilon(1e-12));
    CHECK(rhs == doctest::Approx(-pi * pi / 4).epsilon(1e-12));
  }
}

TEST_CASE("geodesic flow is the phase rotation") {
  Rng r(13, 5);
  SphereCovector x = random_ES0(2, 1.0, r);
  for (double t : {0.0, 0.3, 1.7, pi}) CHECK(geodesic_flow_pair(x, t).deviation < 1e-10);
  CMatrix a = tau_H(alpha(x));
  CHECK((geodesic_flow_pair(x, pi).flowed - a).norm() < 1e-10 * a.norm());
  CHECK((geodesic_flow_pair(x, pi / 2).flowed + a).norm() < 1e-10 * a.norm());
}

TEST_CASE("Hopf pushforward") {
  HopfCheck h = hopf_pushforward_check(1, MCConfig{20000, 3, 1, 4096});
  CHECK(std::abs(h.volume.real() - h.exact_volume) < 4 * h.volume.stderr_);
  CHECK(h.duality_residual < 1e-12);
  CHECK(h.density_residual < 1e-12);
  CHECK(hopf_chart_density(Eigen::VectorXd::Zero(4)) > 0.0);
}
