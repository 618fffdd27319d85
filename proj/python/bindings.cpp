#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hadamard_frac/criterion.hpp"
#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/estimate_probe.hpp"
#include "hadamard_frac/frac_kernels.hpp"
#include "hadamard_frac/initial_data.hpp"
#include "hadamard_frac/serialize.hpp"
#include "hadamard_frac/special.hpp"
#include "hadamard_frac/test_functions.hpp"
#include "hadamard_frac/verify.hpp"

namespace py = pybind11;
using namespace hfrac;

namespace {

Integrand make_integrand(const std::string& kind, double value) {
  if (kind == "const") return Integrand::constant(value);
  if (kind == "logpow") return Integrand::log_power(value);
  if (kind == "pow") return Integrand::linear_power(value);
  if (kind == "mu") return Integrand::mu_family(value);
  throw DomainError("unknown integrand kind '" + kind + "'");
}

RadialProfile make_profile(const std::string& tag, int N, const std::string& part) {
  const Part pt = part == "imag" ? Part::Imaginary : Part::Real;
  switch (profile_tag_from_string(tag)) {
    case ProfileTag::InverseWeight:
      return RadialProfile::inverse_weight(N, pt);
    case ProfileTag::GaussWeight:
      return RadialProfile::gauss_weight(N, pt);
    default:
      return RadialProfile::exp_decay(N, pt);
  }
}

QuadratureSpec spec(double rel_tol) {
  QuadratureSpec q;
  q.rel_tol = rel_tol;
  return q;
}

}  // namespace

PYBIND11_MODULE(_hadamard_frac, m) {
  m.doc() = "Hadamard fractional operators and nonexistence criteria";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<DivergentIntegral>(m, "DivergentIntegral", PyExc_ArithmeticError);

  m.def("gamma", &gamma_fn, py::arg("x"));
  m.def("beta", &beta_fn, py::arg("x"), py::arg("y"));
  m.def("sphere_area", &sphere_area, py::arg("N"));

  m.def(
      "operator",
      [](const std::string& op, const std::string& kind, double value, double sigma, double a,
         double T, double t, double rel_tol) {
        const Integrand f = make_integrand(kind, value);
        const FracParams p{op == "D" ? 1.0 : sigma, a, T};
        const QuadratureSpec q = spec(rel_tol);
        Approx r;
        if (op == "Ia") r = rl_left_integral(f, p, t, q);
        else if (op == "IT") r = rl_right_integral(f, p, t, q);
        else if (op == "Ja") r = hadamard_left_integral(f, p, t, q);
        else if (op == "JT") r = hadamard_right_integral(f, p, t, q);
        else if (op == "D") r = hadamard_caputo_derivative(f, sigma, p, t, q);
        else throw DomainError("unknown operator '" + op + "'");
        return py::make_tuple(r.value, r.error);
      },
      py::arg("op"), py::arg("kind"), py::arg("value"), py::arg("sigma"), py::arg("a"),
      py::arg("T"), py::arg("t"), py::arg("rel_tol") = 1e-12,
      "Operator Ia, IT, Ja, JT or D (sigma is alpha for D) applied to a closed-form "
      "integrand; returns (value, error).");

  m.def(
      "mu_right_image",
      [](double a, double T, double kappa, double sigma, double t) {
        return mu_right_image(MuParams(a, T, kappa), sigma, t);
      },
      py::arg("a"), py::arg("T"), py::arg("kappa"), py::arg("sigma"), py::arg("t"));

  m.def(
      "criterion_json",
      [](double alpha, double gamma, int N, double p, double lambda1, double lambda2, double a,
         double f1, double f2) {
        const ProblemParams pp{alpha, gamma, N, p, lambda1, lambda2, a};
        pp.validate();
        return dump_json(to_json(evaluate(pp, sign_functionals(pp, f1, f2))));
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("N"), py::arg("p"), py::arg("lambda1") = 1.0,
      py::arg("lambda2") = 0.0, py::arg("a") = 1.0, py::arg("f1_integral") = 1.0,
      py::arg("f2_integral") = 0.0);

  m.def(
      "total_integral",
      [](const std::string& tag, int N, double rel_tol) {
        const RadialIntegral r = total_integral(make_profile(tag, N, "real"), spec(rel_tol));
        return py::make_tuple(r.value, r.closed_form ? py::cast(*r.closed_form) : py::none());
      },
      py::arg("profile"), py::arg("N"), py::arg("rel_tol") = 1e-12);

  m.def(
      "verify_json",
      [](const std::string& suite) {
        VerifyOptions o;
        if (!suite.empty()) o.suite = suite;
        return dump_json(to_json(run_verify(o)));
      },
      py::arg("suite") = "");

  m.def(
      "probe_json",
      [](double alpha, double gamma, int N, double p, std::vector<double> R_grid,
         const std::string& profile) {
        ProbeConfig cfg;
        cfg.pp = ProblemParams{alpha, gamma, N, p, 1.0, 0.0, 1.0};
        cfg.R_grid = std::move(R_grid);
        return dump_json(to_json(sweep(cfg, make_initial_value(make_profile(profile, N, "real")))));
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("N"), py::arg("p"),
      py::arg("R_grid") = std::vector<double>{10.0, 20.0, 40.0, 80.0},
      py::arg("profile") = "exp");
}
