#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "hq/rng.hpp"

namespace hq {

using cd = std::complex<double>;

double log_gamma(double x);
double log_vol_sphere(int m);
double vol_sphere(int m);

// ∫_0^∞ t^k e^{-ct} dt = Γ(k+1)/c^{k+1}
double log_gamma_radial(double k, double c);
double gamma_radial(double k, double c);

// Uniform point on S^dim, returned in R^{dim+1}.
Eigen::VectorXd sphere_uniform(int dim, Rng& rng);

struct MCConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: hardware concurrency
  std::uint64_t block = 4096;
};

struct MCEstimate {
  cd value{0.0, 0.0};
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  double real() const { return value.real(); }
};

// Per-sample vector outputs; sample means and the covariance of the means.
struct MCStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov_of_mean;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  MCEstimate real(int i, double scale = 1.0) const;
  MCEstimate complex(int re, int im, double scale = 1.0) const;
  // scale * mean[i] / mean[j], delta-method error
  MCEstimate ratio(int i, int j, double scale = 1.0) const;
};

using SampleFn = std::function<void(Rng&, double*)>;

// Sample i is drawn from substream i / block, so the result is independent of
// the worker count.
MCStats mc_run(const MCConfig& cfg, int outputs, const SampleFn& fn);

double pairwise_sum(const double* x, std::size_t n);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

QuadResult quad_halfline(const std::function<double(double)>& f, double tol = 1e-13);
QuadResult quad_interval(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-13);
QuadResult quad_interval_gk(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-13);

// Pfaffian of a real skew-symmetric matrix (Parlett-Reid style elimination).
double pfaffian(Eigen::MatrixXd a);

double central_diff(const std::function<double(double)>& f, double h = 1e-5);

}  // namespace hq
