#include "hq/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace hq {

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be positive");
  return std::lgamma(x);
}

double log_vol_sphere(int m) {
  if (m < 0) throw std::domain_error("vol_sphere: negative dimension");
  const double h = 0.5 * (m + 1);
  return std::log(2.0) + h * std::log(std::numbers::pi) - log_gamma(h);
}

double vol_sphere(int m) { return std::exp(log_vol_sphere(m)); }

double log_gamma_radial(double k, double c) {
  if (!(k > -1.0)) throw std::domain_error("gamma_radial: k must exceed -1");
  if (!(c > 0.0)) throw std::domain_error("gamma_radial: c must be positive");
  return log_gamma(k + 1.0) - (k + 1.0) * std::log(c);
}

double gamma_radial(double k, double c) { return std::exp(log_gamma_radial(k, c)); }

Eigen::VectorXd sphere_uniform(int dim, Rng& rng) {
  Eigen::VectorXd x(dim + 1);
  double r2;
  do {
    for (int i = 0; i <= dim; ++i) x[i] = rng.normal();
    r2 = x.squaredNorm();
  } while (r2 < 1e-300);
  return x / std::sqrt(r2);
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

namespace {

struct Neumaier {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

}  // namespace

MCStats mc_run(const MCConfig& cfg, int k, const SampleFn& fn) {
  if (cfg.samples < 2) throw std::invalid_argument("mc_run: need at least two samples");
  if (cfg.block == 0) throw std::invalid_argument("mc_run: block must be positive");
  const std::uint64_t nblocks = (cfg.samples + cfg.block - 1) / cfg.block;
  const int nm = k + k * (k + 1) / 2;
  std::vector<double> sums(nblocks * nm, 0.0);

  auto run_block = [&](std::uint64_t b) {
    Rng rng(cfg.seed, b);
    std::vector<Neumaier> acc(nm);
    std::vector<double> out(k);
    const std::uint64_t lo = b * cfg.block;
    const std::uint64_t hi = std::min(cfg.samples, lo + cfg.block);
    for (std::uint64_t i = lo; i < hi; ++i) {
      fn(rng, out.data());
      int m = k;
      for (int a = 0; a < k; ++a) {
        acc[a].add(out[a]);
        for (int c = a; c < k; ++c) acc[m++].add(out[a] * out[c]);
      }
    }
    for (int j = 0; j < nm; ++j) sums[b * nm + j] = acc[j].get();
  };

  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, nblocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < nblocks; b += workers) run_block(b);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<double> col(nblocks);
  std::vector<double> tot(nm);
  for (int j = 0; j < nm; ++j) {
    for (std::uint64_t b = 0; b < nblocks; ++b) col[b] = sums[b * nm + j];
    tot[j] = pairwise_sum(col.data(), nblocks);
  }

  const double N = static_cast<double>(cfg.samples);
  MCStats st;
  st.samples = cfg.samples;
  st.seed = cfg.seed;
  st.mean.resize(k);
  st.cov_of_mean.resize(k, k);
  for (int a = 0; a < k; ++a) st.mean[a] = tot[a] / N;
  int m = k;
  for (int a = 0; a < k; ++a)
    for (int c = a; c < k; ++c) {
      double cov = (tot[m++] - N * st.mean[a] * st.mean[c]) / (N - 1.0);
      st.cov_of_mean(a, c) = st.cov_of_mean(c, a) = cov / N;
    }
  return st;
}

MCEstimate MCStats::real(int i, double scale) const {
  MCEstimate e;
  e.value = scale * mean[i];
  e.stderr_ = std::abs(scale) * std::sqrt(std::max(0.0, cov_of_mean(i, i)));
  e.samples = samples;
  e.seed = seed;
  return e;
}

MCEstimate MCStats::complex(int re, int im, double scale) const {
  MCEstimate e;
  e.value = scale * cd(mean[re], mean[im]);
  e.stderr_ = std::abs(scale) * std::sqrt(std::max(0.0, cov_of_mean(re, re) + cov_of_mean(im, im)));
  e.samples = samples;
  e.seed = seed;
  return e;
}

MCEstimate MCStats::ratio(int i, int j, double scale) const {
  const double x = mean[i], y = mean[j];
  const double r = x / y;
  const double var = (cov_of_mean(i, i) - 2.0 * r * cov_of_mean(i, j) + r * r * cov_of_mean(j, j)) / (y * y);
  MCEstimate e;
  e.value = scale * r;
  e.stderr_ = std::abs(scale) * std::sqrt(std::max(0.0, var));
  e.samples = samples;
  e.seed = seed;
  return e;
}

QuadResult quad_halfline(const std::function<double(double)>& f, double tol) {
  boost::math::quadrature::exp_sinh<double> integrator;
  QuadResult r;
  double l1 = 0.0;
  r.value = integrator.integrate(f, tol, &r.error, &l1);
  r.error *= std::max(1.0, l1);
  return r;
}

QuadResult quad_interval(const std::function<double(double)>& f, double a, double b, double tol) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  QuadResult r;
  double l1 = 0.0;
  r.value = integrator.integrate(f, a, b, tol, &r.error, &l1);
  r.error *= std::max(1.0, l1);
  return r;
}

QuadResult quad_interval_gk(const std::function<double(double)>& f, double a, double b, double tol) {
  QuadResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol, &r.error);
  return r;
}

double pfaffian(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("pfaffian: matrix must be square");
  if (n % 2) return 0.0;
  double pf = 1.0;
  for (Eigen::Index k = 0; k < n - 1; k += 2) {
    Eigen::Index piv;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&piv);
    piv += k + 1;
    if (piv != k + 1) {
      a.row(k + 1).swap(a.row(piv));
      a.col(k + 1).swap(a.col(piv));
      pf = -pf;
    }
    const double d = a(k + 1, k);
    if (d == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index m = n - k - 2;
      Eigen::VectorXd tau = a.row(k).tail(m).transpose() / a(k, k + 1);
      Eigen::VectorXd col = a.col(k + 1).tail(m);
      a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

double central_diff(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

}  // namespace hq
