#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hq/spectral.hpp"

using namespace hq;

TEST_CASE("eigenspace dimensions") {
  const std::int64_t want[] = {1, 5, 14, 30, 55, 91};
  for (int l = 0; l <= 5; ++l) CHECK(dim_Hl(1, l) == want[l]);
  for (int n = 1; n <= 4; ++n) CHECK(dim_Hl(n, 0) == 1);
  CHECK(std::exp(log_dim_Hl(2, 7)) == doctest::Approx(static_cast<double>(dim_Hl(2, 7))));
  EigenspaceInfo e = eigenspace_info(1, 2);
  CHECK(e.dim == 14);
  CHECK(e.lambda == 4.0 * 2 * (3 + 2));
}

TEST_CASE("eigenvalues") {
  CHECK(lambda_l(1, 1) == 16.0);
  CHECK(lambda_l(3, 0) == 0.0);
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= 200; ++l) {
      CHECK(lambda_identity_residual(n, l) == 0.0);
      CHECK(sphere_descent_check(n, l) == 0.0);
    }
}

TEST_CASE("harmonicity certificates") {
  Rng r(17, 1);
  for (int n = 1; n <= 2; ++n) {
    CMatrix a = random_tEH(n, r);
    HarmonicityCertificate h = harmonicity_certificate(a, 2, r);
    CHECK(h.trace_residual < 1e-10);
    CHECK(h.null_gradient_residual < 1e-10);
    CHECK(h.fd_laplacian_residual < 1e-6);
    HarmonicityCertificate m = harmonicity_certificate(harmonic_model_point(n), 1, r);
    CHECK(m.trace_residual < 1e-12);
    HarmonicityCertificate bad = harmonicity_certificate_unchecked(random_hermitian_pair(n, r), 2, r);
    CHECK(std::max(bad.trace_residual, bad.null_gradient_residual) > 1e-2);
    CHECK_THROWS(harmonicity_certificate(random_hermitian_pair(n, r), 1, r));
  }
}

TEST_CASE("Sp(1) invariance and the quadratic form") {
  Rng r(17, 2);
  CMatrix a = random_tEH(1, r);
  CHECK(sp1_invariance_check(a, 50, r) < 1e-12);
  CHECK(sp1_invariance_check(a, 50, r, true) > 1e-2);
  QuadForm q = build_quadform(a);
  HVector p = random_unit_hvector(1, r);
  CHECK(std::abs(q(to_flat(p)) - pair_PA(p, a)) < 1e-12 * a.norm());
  CHECK(sp1_invariance_at(a, p, random_unit_quaternion(r)) < 1e-12);
}
