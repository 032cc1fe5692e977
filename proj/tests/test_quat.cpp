#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hq/quat.hpp"
#include "hq/rng.hpp"

using namespace hq;

namespace {

Quaternion rq(Rng& r) {
  Quaternion q;
  for (double& v : q.x) v = r.normal();
  return q;
}

double dist(const Quaternion& a, const Quaternion& b) { return std::sqrt((a - b).norm2()); }

QMatrix rjordan(int m, Rng& r) {
  QMatrix x(m);
  for (auto& q : x.a) q = rq(r);
  return 0.5 * (x + theta_transpose(x));
}

}  // namespace

TEST_CASE("multiplication table") {
  auto e = [](int i) { return Quaternion::unit(i); };
  CHECK(dist(qmul(e(1), e(2)), e(3)) == 0.0);
  CHECK(dist(qmul(e(2), e(1)), -1.0 * e(3)) == 0.0);
  CHECK(dist(qmul(e(2), e(3)), e(1)) == 0.0);
  CHECK(dist(qmul(e(3), e(1)), e(2)) == 0.0);
  for (int i = 1; i < 4; ++i) CHECK(dist(qmul(e(i), e(i)), -1.0 * e(0)) == 0.0);
  CHECK(dist(qmul(e(1) + e(2), e(1) - e(2)), -2.0 * e(3)) == 0.0);
}

TEST_CASE("conjugation and norm") {
  Rng r(7, 1);
  for (int s = 0; s < 200; ++s) {
    Quaternion x = rq(r), y = rq(r);
    CHECK(dist(theta(qmul(x, y)), qmul(theta(y), theta(x))) < 1e-13);
    CHECK(qmul(x, y).norm2() == doctest::Approx(x.norm2() * y.norm2()).epsilon(1e-13));
    CHECK(dist(qmul(x, theta(x)), x.norm2() * Quaternion::unit(0)) < 1e-13 * x.norm2());
  }
}

TEST_CASE("rho is an algebra isomorphism") {
  Eigen::Matrix2cd r1;
  r1 << cd(0, 1), 0.0, 0.0, cd(0, -1);
  CHECK((rho(Quaternion::unit(1)) - r1).norm() == 0.0);
  CHECK((rho(Quaternion::unit(0)) - Eigen::Matrix2cd::Identity()).norm() == 0.0);
  Rng r(7, 2);
  for (int s = 0; s < 100; ++s) {
    Quaternion x = rq(r), y = rq(r);
    CHECK((rho(qmul(x, y)) - rho(x) * rho(y)).norm() < 1e-13 * (1 + x.norm2() + y.norm2()));
    CHECK((rho(theta(x)) - rho(x).adjoint()).norm() < 1e-14 * (1 + x.norm2()));
    CHECK(rho(x).determinant().real() == doctest::Approx(x.norm2()).epsilon(1e-13));
    Quaternion back = rho_inv_real(rho(x));
    CHECK(dist(back, x) < 1e-14 * (1 + x.norm2()));
  }
  Eigen::Matrix2cd bad = Eigen::Matrix2cd::Zero();
  bad(0, 1) = 1.0;
  CHECK_THROWS(rho_inv_real(bad));
}

TEST_CASE("Jordan product") {
  Rng r(7, 3);
  for (int m = 2; m <= 4; ++m) {
    QMatrix x = rjordan(m, r), y = rjordan(m, r), z = rjordan(m, r);
    CHECK(is_jordan(x));
    CHECK(is_jordan(jordan(x, y)));
    CHECK(real_inner(jordan(x, y), z) == doctest::Approx(real_inner(x, jordan(y, z))).epsilon(1e-12));
    CHECK(max_abs(jordan(x, y) - jordan(y, x)) < 1e-14);
    CHECK(jordan_norm2(x) == doctest::Approx(real_inner(x, x)));
  }
  QMatrix q0(2);
  q0(0, 1) = q0(1, 0) = Quaternion::unit(0);
  CHECK(jordan_norm2(q0) == doctest::Approx(2.0));
  QMatrix nj(2);
  nj(0, 1) = Quaternion::unit(1);
  CHECK_FALSE(is_jordan(nj));
}

TEST_CASE("complexification") {
  Rng r(7, 4);
  QMatrix x = rjordan(3, r), y = rjordan(3, r);
  CMatrix a = complexify(x), b = complexify(y);
  CHECK(a.rows() == 6);
  CHECK(a.squaredNorm() == doctest::Approx(2 * jordan_norm2(x)).epsilon(1e-13));
  CHECK(std::abs(cinner(a, b) - real_inner(x, y)) < 1e-12);
  CHECK((complexify(QMatrix::identity(2)) - CMatrix::Identity(4, 4)).norm() == 0.0);
  CMatrix back = complexify(decomplexify(a));
  CHECK((back - a).norm() < 1e-14);
  QSplit sp = quaternionic_split(a + cd(0, 1) * b);
  CHECK(max_abs(sp.re - x) < 1e-13);
  CHECK(max_abs(sp.im - y) < 1e-13);
}

TEST_CASE("right H-module") {
  Rng r(7, 5);
  HVector h{rq(r), rq(r)}, k{rq(r), rq(r)};
  Quaternion c = rq(r);
  Quaternion lhs = h_inner(h, right_mul(k, c)), rhs = qmul(h_inner(h, k), c);
  CHECK(dist(lhs, rhs) < 1e-13);
  CHECK(h_inner(h, h).x[0] == doctest::Approx(e_inner(h, h)));
  CHECK(from_flat(to_flat(h))[1].x[2] == h[1].x[2]);
  HVector px = hq::apply(outer(h, h), k);
  HVector want = right_mul(h, h_inner(h, k));
  CHECK(e_norm(axpy(-1.0, want, px)) < 1e-12);
}
