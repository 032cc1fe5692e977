#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hq/spaces.hpp"

using namespace hq;

TEST_CASE("sampled points satisfy their constraints") {
  Rng r(11, 1);
  for (int n = 1; n <= 3; ++n) {
    SphereCovector x = random_ES0(n, 1.3, r);
    CHECK(in_E_S0(x));
    CHECK(in_E_S(x));
    CHECK(e_norm(x.p) == doctest::Approx(1.0));
    CHECK(e_norm(x.q) == doctest::Approx(1.3));
    SphereCovector g = random_ES(n, 0.7, r);
    CHECK(in_E_S(g));
    CHECK_FALSE(in_E_S0(g));
    CotangentPointH pq = random_EH(n, 2.0, r);
    CHECK(in_E_H(pq));
    CHECK(in_tE_H(random_tEH(n, r)));
    CHECK(std::abs(random_sl2(r).determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("the diagram commutes on E_S0 but not on E_S") {
  Rng r(11, 2);
  for (int n = 1; n <= 2; ++n) {
    SphereCovector x = random_ES0(n, 0.9, r);
    BTuple b = tau_S(x);
    CHECK(in_tE_S0(b));
    CMatrix lhs = beta(b), rhs = tau_H(alpha(x));
    CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
    CHECK((tau_H_of_ES0(x.p, x.q) - rhs).norm() < 1e-12 * rhs.norm());
    SphereCovector g = random_ES(n, 0.9, r);
    CHECK((beta(tau_S(g)) - tau_H(alpha(g))).norm() > 1e-3);
  }
}

TEST_CASE("norm chain and Q cubed") {
  Rng r(11, 3);
  SphereCovector x = random_ES0(2, 1.7, r);
  const double q2 = 1.7 * 1.7;
  BTuple b = tau_S(x);
  CotangentPointH pq = alpha(x);
  CHECK(b.norm() * b.norm() == doctest::Approx(4 * q2));
  CHECK(jordan_norm2(pq.Q) == doctest::Approx(2 * q2));
  CHECK(tau_H(pq).squaredNorm() == doctest::Approx(2 * 4 * q2 * q2));
  QMatrix q3 = qmatmul(qmatmul(pq.Q, pq.Q), pq.Q);
  CHECK(max_abs(q3 - q2 * pq.Q) < 1e-12);
  CHECK(std::abs(b.D()) < 1e-12);
}

TEST_CASE("inverses and the SL2 fiber") {
  Rng r(11, 4);
  SphereCovector x = random_ES0(1, 1.1, r);
  BTuple b = tau_S(x);
  SphereCovector y = tau_S_inv(b);
  CHECK(e_norm(axpy(-1.0, y.p, x.p)) < 1e-12);
  CHECK(e_norm(axpy(-1.0, y.q, x.q)) < 1e-12);
  CMatrix a = beta(b);
  CHECK((beta(b * random_sl2(r)) - a).norm() < 1e-10 * a.norm());
  CotangentPointH pq = tau_H_inv(a);
  CHECK((tau_H(pq) - a).norm() < 1e-10 * a.norm());
  CHECK(max_abs(P_from_A(a) - pq.P) < 1e-12);
  CHECK(max_abs(hopf(lift(pq.P)) - pq.P) < 1e-12);
  CHECK(BTuple::from_vec(b.vec()).norm() == doctest::Approx(b.norm()));
}

TEST_CASE("membership rejects perturbations and wrong shapes") {
  Rng r(11, 5);
  CMatrix a = random_tEH(1, r);
  CMatrix p = a;
  p(0, 0) += 1e-3 * a.norm();
  CHECK_FALSE(in_tE_H(p));
  CHECK_FALSE(in_tE_H(CMatrix::Zero(4, 4)));
  CHECK_THROWS(tau_H_inv(p));
}

TEST_CASE("JSON point records round trip") {
  Rng r(11, 6);
  SphereCovector x = random_ES0(1, 1.0, r);
  SphereCovector y = es_from_json(point_to_json(x));
  CHECK(e_norm(axpy(-1.0, y.p, x.p)) == 0.0);
  BTuple b = tau_S(x);
  CHECK((btuple_from_json(point_to_json(b)).vec() - b.vec()).norm() == 0.0);
  CMatrix a = beta(b);
  CHECK((amatrix_from_json(point_to_json(a)) - a).norm() == 0.0);
  CHECK_THROWS(amatrix_from_json("{\"space\":\"nope\"}"));
}

TEST_CASE("pairing and the model point") {
  HVector p0{Quaternion::unit(0), Quaternion()};
  HVector q{Quaternion(), Quaternion::unit(0)};
  CMatrix a = tau_H_of_ES0(p0, q);
  CHECK(a.squaredNorm() == doctest::Approx(8.0));
  CHECK(std::abs(pair_PA(p0, a) - 1.0) < 1e-14);
  QMatrix qq(2);
  qq(0, 1) = qq(1, 0) = Quaternion::unit(0);
  CHECK(metric_gH(qq, qq) == doctest::Approx(1.0));
}
