#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hq/geometry.hpp"
#include "hq/quantization.hpp"
#include "hq/spectral.hpp"
#include "hq/suites.hpp"

namespace py = pybind11;

namespace {

hq::Quaternion to_q(const std::array<double, 4>& a) { return hq::Quaternion{a}; }

hq::SuiteConfig make_cfg(int n, int lmax, std::uint64_t samples, std::uint64_t seed, double tol_scale,
                         const std::string& kernel_b) {
  hq::SuiteConfig c;
  c.n = n;
  c.lmax = lmax;
  c.samples = samples;
  c.seed = seed;
  c.tol_scale = tol_scale;
  if (kernel_b != "displayed" && kernel_b != "chain") throw std::invalid_argument("kernel_b must be displayed or chain");
  c.kernel_b = kernel_b == "chain" ? hq::BNorm::Chain : hq::BNorm::Displayed;
  return c;
}

hq::BNorm bnorm(const std::string& s) {
  if (s == "displayed") return hq::BNorm::Displayed;
  if (s == "chain") return hq::BNorm::Chain;
  throw std::invalid_argument("b must be displayed or chain");
}

}  // namespace

PYBIND11_MODULE(_hquant, m) {
  m.doc() = "quaternion projective space quantization checks";

  m.def("qmul", [](const std::array<double, 4>& a, const std::array<double, 4>& b) { return hq::qmul(to_q(a), to_q(b)).x; });
  m.def("theta", [](const std::array<double, 4>& a) { return hq::theta(to_q(a)).x; });
  m.def("rho", [](const std::array<double, 4>& a) { return Eigen::Matrix2cd(hq::rho(to_q(a))); });

  m.def("dim_Hl", &hq::dim_Hl, py::arg("n"), py::arg("l"));
  m.def("lambda_l", &hq::lambda_l, py::arg("n"), py::arg("l"));
  m.def("I_l", &hq::I_l, py::arg("n"), py::arg("l"));
  m.def("b_l", &hq::b_l, py::arg("n"), py::arg("l"));
  m.def("b_l_semianalytic", &hq::b_l_semianalytic, py::arg("n"), py::arg("l"));
  m.def("a_l", &hq::a_l, py::arg("n"), py::arg("l"));
  m.def("c_l", &hq::c_l, py::arg("n"), py::arg("l"));
  m.def("c_l_chain", &hq::c_l_chain, py::arg("n"), py::arg("l"));
  m.def("T_norm", &hq::T_norm, py::arg("n"), py::arg("l"));
  m.def("T_norm_limit", &hq::T_norm_limit, py::arg("n"), py::arg("l") = 1e6);
  m.def("ratio_limit", &hq::ratio_limit, py::arg("n"), py::arg("l") = 1e6);
  m.def("a_l_quadrature", [](int n, int l) { return hq::a_l_quadrature(n, l).value; });
  m.def("c_l_quadrature", [](int n, int l) { return hq::c_l_quadrature(n, l).value; });

  m.def("stated_constants", [](int n) {
    hq::StatedConstants s = hq::stated_constants(n);
    return py::dict(py::arg("a_S") = s.a_S, py::arg("b_S") = s.b_S, py::arg("a_H") = s.a_H, py::arg("b_H") = s.b_H,
                    py::arg("det_theta") = s.det_theta);
  });

  m.def("random_tEH", [](int n, std::uint64_t seed) {
    hq::Rng r(seed, 0);
    return hq::random_tEH(n, r);
  }, py::arg("n"), py::arg("seed") = 0);
  m.def("in_tE_H", [](const hq::CMatrix& a) { return hq::in_tE_H(a); });
  m.def("harmonicity", [](const hq::CMatrix& a, int l, std::uint64_t seed) {
    hq::Rng r(seed, 1);
    hq::HarmonicityCertificate h = hq::harmonicity_certificate(a, l, r);
    return py::dict(py::arg("trace") = h.trace_residual, py::arg("null_gradient") = h.null_gradient_residual,
                    py::arg("fd_laplacian") = h.fd_laplacian_residual);
  }, py::arg("a"), py::arg("l"), py::arg("seed") = 0);

  m.def("kernel_diag", [](int n, double norm, int L, const std::string& b) {
    hq::KernelSeries k = hq::kernel_diag(n, norm, L, bnorm(b));
    return py::dict(py::arg("value") = k.value, py::arg("tail_bound") = k.tail_bound, py::arg("terms") = k.terms);
  }, py::arg("n"), py::arg("norm"), py::arg("L") = 60, py::arg("b") = "displayed");

  m.def("run_suite_json", [](const std::string& name, int n, int lmax, std::uint64_t samples, std::uint64_t seed,
                             double tol_scale, const std::string& kernel_b) {
    hq::SuiteConfig c = make_cfg(n, lmax, samples, seed, tol_scale, kernel_b);
    py::gil_scoped_release nogil;
    return hq::run_suite(name, c).to_json().dump();
  }, py::arg("name"), py::arg("n") = 0, py::arg("lmax") = 5, py::arg("samples") = 0, py::arg("seed") = 42,
        py::arg("tol_scale") = 1.0, py::arg("kernel_b") = "displayed");

  m.def("run_criterion_json", [](int k, int n, std::uint64_t samples, std::uint64_t seed, double tol_scale) {
    hq::SuiteConfig c = make_cfg(n, 5, samples, seed, tol_scale, "displayed");
    py::gil_scoped_release nogil;
    return hq::run_criterion(k, c).to_json().dump();
  }, py::arg("k"), py::arg("n") = 0, py::arg("samples") = 0, py::arg("seed") = 42, py::arg("tol_scale") = 1.0);

  m.def("constants_table_json", [](int n, int l0, int l1) { return hq::constants_table(n, l0, l1).dump(); });
  m.def("suite_names", &hq::suite_names);
}
