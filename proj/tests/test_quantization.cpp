#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hq/quantization.hpp"

using namespace hq;
constexpr double pi = std::numbers::pi;

TEST_CASE("closed forms in log space") {
  CHECK(I_l(1, 0) == doctest::Approx(pi * pi / 6).epsilon(1e-14));
  CHECK(S7_moment(1) == doctest::Approx(2 * std::pow(pi, 4) / 15).epsilon(1e-14));
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= 50; ++l) {
      CHECK(log_T_norm(n, l) == doctest::Approx(log_T_norm_display(n, l)).epsilon(1e-12));
      CHECK(b_l(n, l) > 0.0);
      CHECK(a_l(n, l) > 0.0);
    }
  CHECK(std::isfinite(log_b_l(2, 1e6)));
  CHECK(T_norm_limit(1) == doctest::Approx(std::sqrt(2.0) / pi).epsilon(1e-3));
  CHECK(T_norm_prefactor(3) == doctest::Approx(std::sqrt(2.0) / pi).epsilon(1e-14));
  CHECK(ratio_limit(2) == doctest::Approx(pi / 2).epsilon(1e-3));
}

// Frozen discrepancies between the displayed constants and their assembled
// definitions; see README.
TEST_CASE("displayed b_l and c_l against their assemblies") {
  for (int n = 1; n <= 2; ++n)
    for (int l = 0; l <= 3; ++l) {
      CHECK(std::exp(log_b_l(n, l) - log_b_l_chain(n, l)) == doctest::Approx(2.0).epsilon(1e-12));
      const double r = (2.0 * l + 4 * n + 1) / (2.0 * l + 2 * n + 1);
      CHECK(c_l_chain(n, l) / c_l(n, l) == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("quadrature oracles") {
  for (int l = 0; l <= 3; ++l) {
    QuadResult a = a_l_quadrature(1, l);
    CHECK(a.value == doctest::Approx(a_l(1, l)).epsilon(1e-8));
    QuadResult c = c_l_quadrature(1, l);
    CHECK(c.value == doctest::Approx(c_l_chain(1, l)).epsilon(1e-8));
  }
  double err = 0;
  const double lq = log_radial_quadrature(7.5, 2.0, &err);
  CHECK(lq == doctest::Approx(log_gamma_radial(7.5, 2.0)).epsilon(1e-12));
  CHECK(err < 1e-10);
}

TEST_CASE("kernel tails") {
  for (int n = 1; n <= 2; ++n) {
    CHECK(b_ratio(n, 1e4) * 1e16 / std::pow(pi, 4) == doctest::Approx(1.0).epsilon(1e-2));
    for (int l = 0; l <= 100; ++l) CHECK(b_ratio(n, l) <= b_ratio_bound(n, l));
    KernelSeries k = kernel_diag(n, 3.0, 60);
    CHECK(k.value > 0.0);
    CHECK(k.tail_bound <= 1e-12 * k.value);
  }
  CHECK_THROWS(kernel_diag(1, 50.0, 2));
}

TEST_CASE("Monte Carlo estimators agree with closed forms") {
  MCEstimate i1 = I_l_mc(1, 1, MCConfig{200000, 5, 1, 4096});
  CHECK(std::abs(i1.real() - I_l(1, 1)) < 4 * i1.stderr_);
  MCEstimate s = S7_moment_mc(1, MCConfig{200000, 6, 1, 4096});
  CHECK(std::abs(s.real() - S7_moment(1)) < 4 * s.stderr_);
  Rng r(23, 1);
  HlFunction phi = random_Hl_function(1, 1, 2, r);
  HVector pp = random_unit_hvector(1, r);
  MCEstimate t = T_apply(Al_image(phi), pp, MCConfig{100000, 7, 1, 4096});
  CHECK(std::abs(t.value - a_l(1, 1) * phi(pp)) < 5 * t.stderr_ + 1e-12);
}

TEST_CASE("flow phases") {
  FlowCheck f = flow_commutation_check(1, 1, pi, MCConfig{2000, 8, 1, 4096});
  CHECK(std::abs(f.quantum_phase_pi + 1.0) < 1e-12);
  CHECK(f.classical_return_pi < 1e-12);
  CHECK(f.scalar_residual < 1e-12);
}

TEST_CASE("constants rows") {
  ConstantsRow r = constants_row(1, 2);
  CHECK(r.a_l == doctest::Approx(r.a_l_quad).epsilon(1e-8));
  CHECK(r.T_norm == doctest::Approx(r.T_norm_display).epsilon(1e-10));
  CHECK(r.ratio == doctest::Approx(r.c_l / r.a_l));
}
