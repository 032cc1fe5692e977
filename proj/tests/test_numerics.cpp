#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hq/numerics.hpp"
#include "hq/rng.hpp"

using namespace hq;
constexpr double pi = std::numbers::pi;

TEST_CASE("rng streams are reproducible and independent") {
  Rng a(42, 3), b(42, 3), c(42, 4);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  Rng u(1, 1);
  double s = 0, s2 = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double z = u.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / N) < 0.01);
  CHECK(std::abs(s2 / N - 1.0) < 0.02);
  Rng g(1, 2);
  double gm = 0;
  for (int i = 0; i < 50000; ++i) gm += g.gamma(2.5);
  CHECK(gm / 50000 == doctest::Approx(2.5).epsilon(0.02));
}

TEST_CASE("gamma helpers and sphere volumes") {
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)));
  CHECK_THROWS(log_gamma(0.0));
  CHECK(vol_sphere(1) == doctest::Approx(2 * pi));
  CHECK(vol_sphere(2) == doctest::Approx(4 * pi));
  CHECK(vol_sphere(3) == doctest::Approx(2 * pi * pi));
  CHECK(vol_sphere(7) == doctest::Approx(std::pow(pi, 4) / 3));
  CHECK(gamma_radial(3, 2) == doctest::Approx(6.0 / 16.0));
}

TEST_CASE("quadrature") {
  QuadResult q = quad_halfline([](double t) { return t * t * std::exp(-t); });
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-13));
  QuadResult s = quad_interval([](double x) { return std::sin(x); }, 0, pi);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-13));
  QuadResult k = quad_interval_gk([](double x) { return x * x; }, 0, 3);
  CHECK(k.value == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(central_diff([](double x) { return std::exp(x); }) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Pfaffian squares to the determinant") {
  Rng r(5, 5);
  for (int n = 2; n <= 12; n += 2) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = r.normal();
    a = (a - a.transpose()).eval();
    const double pf = pfaffian(a);
    CHECK(pf * pf == doctest::Approx(a.determinant()).epsilon(1e-10));
  }
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
  j(0, 1) = 1;
  j(1, 0) = -1;
  j(2, 3) = 1;
  j(3, 2) = -1;
  CHECK(pfaffian(j) == doctest::Approx(1.0));
  CHECK(pfaffian(Eigen::MatrixXd::Zero(3, 3)) == 0.0);
}

TEST_CASE("Monte Carlo is worker independent") {
  auto fn = [](Rng& r, double* o) {
    const double u = r.uniform();
    o[0] = u * u;
    o[1] = u;
  };
  MCConfig c1{20000, 9, 1, 1000}, c4{20000, 9, 4, 1000};
  MCStats a = mc_run(c1, 2, fn), b = mc_run(c4, 2, fn);
  CHECK(a.mean(0) == b.mean(0));
  CHECK(a.cov_of_mean(0, 0) == b.cov_of_mean(0, 0));
  MCEstimate e = a.real(0);
  CHECK(std::abs(e.real() - 1.0 / 3.0) < 4 * e.stderr_);
  MCEstimate r = a.ratio(0, 1);
  CHECK(std::abs(r.real() - 2.0 / 3.0) < 4 * r.stderr_);
  Rng sr(3, 3);
  CHECK(sphere_uniform(5, sr).norm() == doctest::Approx(1.0));
  std::vector<double> xs(1001, 0.1);
  CHECK(pairwise_sum(xs.data(), xs.size()) == doctest::Approx(100.1).epsilon(1e-14));
}
