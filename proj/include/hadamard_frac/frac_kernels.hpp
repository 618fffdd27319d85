#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hadamard_frac/quadrature.hpp"

namespace hfrac {

/// Fractional order sigma on the time interval [a, T], 0 < a < T.
struct FracParams {
  double sigma = 1.0;
  double a = 1.0;
  double T = 2.718281828459045;

  void validate() const;
  double log_span() const;  // ln(T / a)
};

/// Samples on a grid uniform in ln t: t_k = a (T/a)^(k/(n-1)).
///
/// Between nodes the function is the cubic B-spline interpolant in ln t (piecewise
/// linear when fewer than five samples are given).
class LogGridFunction {
 public:
  LogGridFunction(double a, double T, std::vector<double> values);

  /// Samples `f` at the n log-uniform nodes.
  static LogGridFunction sample(double a, double T, std::size_t n,
                                const std::function<double(double)>& f);

  double a() const { return a_; }
  double T() const { return T_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double node(std::size_t k) const;
  double log_node(std::size_t k) const;  // ln t_k
  double log_step() const;

  double operator()(double t) const;
  double at_log(double log_t) const;

  /// Samples of t f'(t) = df/d(ln t): centered second-order differences, one-sided
  /// second-order stencils at both ends.
  LogGridFunction log_derivative() const;

 private:
  struct Interpolant;
  double a_;
  double T_;
  std::vector<double> values_;
  std::shared_ptr<const Interpolant> interp_;
};

/// Closed-form or sampled function on [a, T] fed to the fractional operators. The
/// closed forms are relative to the operator's endpoints.
class Integrand {
 public:
  struct Constant {
    double c;
  };
  /// (ln t/a)^beta, beta > -1.
  struct LogPower {
    double beta;
  };
  /// mu(t) = (ln T/a)^-kappa (ln T/t)^kappa, kappa >= 1.
  struct MuFamily {
    double kappa;
  };
  /// (t - a)^beta, beta > -1.
  struct LinearPower {
    double beta;
  };
  struct Sampled {
    std::shared_ptr<const LogGridFunction> grid;
  };
  /// Arbitrary function of t. `log_exp` declares f(t) ~ (ln t/a)^log_exp * smooth so
  /// quadrature can absorb the endpoint power; `log_derivative` is t f'(t) if known.
  struct Callable {
    std::function<double(double)> fn;
    std::function<double(double)> log_derivative;
    double log_exp = 0.0;
  };

  using Form = std::variant<Constant, LogPower, MuFamily, LinearPower, Sampled, Callable>;

  static Integrand constant(double c);
  static Integrand log_power(double beta);
  static Integrand mu_family(double kappa);
  static Integrand linear_power(double beta);
  static Integrand sampled(LogGridFunction grid);
  static Integrand callable(std::function<double(double)> fn,
                            std::function<double(double)> log_derivative = {},
                            double log_exp = 0.0);

  const Form& form() const { return form_; }
  bool is_sampled() const { return std::holds_alternative<Sampled>(form_); }
  std::string describe() const;

  /// f(t) for t in [a, T].
  double evaluate(double t, const FracParams& p) const;

 private:
  explicit Integrand(Form form) : form_(std::move(form)) {}
  Form form_;
};

/// A computed value together with its quadrature error estimate.
struct Approx {
  double value = 0.0;
  double error = 0.0;
};

/// (I_a^sigma f)(t) = 1/Gamma(sigma) int_a^t (t - s)^(sigma - 1) f(s) ds.
Approx rl_left_integral(const Integrand& f, const FracParams& p, double t,
                        const QuadratureSpec& q = {});
/// (I_T^sigma f)(t) = 1/Gamma(sigma) int_t^T (s - t)^(sigma - 1) f(s) ds.
Approx rl_right_integral(const Integrand& f, const FracParams& p, double t,
                         const QuadratureSpec& q = {});
/// (J_a^sigma f)(t) = 1/Gamma(sigma) int_a^t (ln t/s)^(sigma - 1) f(s) ds/s, evaluated as
/// the Riemann-Liouville integral of f o exp on [ln a, ln t].
Approx hadamard_left_integral(const Integrand& f, const FracParams& p, double t,
                              const QuadratureSpec& q = {});
/// (J_T^sigma f)(t) = 1/Gamma(sigma) int_t^T (ln s/t)^(sigma - 1) f(s) ds/s.
Approx hadamard_right_integral(const Integrand& f, const FracParams& p, double t,
                               const QuadratureSpec& q = {});

/// t (J_T^sigma f)'(t) = J_T^sigma(s f')(t) - f(T) (ln T/t)^(sigma - 1) / Gamma(sigma).
/// Requires a differentiable integrand and a < t < T when f(T) != 0 and sigma < 1.
Approx hadamard_right_log_derivative(const Integrand& f, const FracParams& p, double t,
                                     const QuadratureSpec& q = {});

/// Left Hadamard-Caputo derivative D_a^alpha f = J_a^(1 - alpha)(t f'), alpha in (0, 1).
/// p.sigma is ignored.
Approx hadamard_caputo_derivative(const Integrand& f, double alpha, const FracParams& p,
                                  double t, const QuadratureSpec& q = {});

struct ConjugatePair {
  Approx lhs;
  Approx rhs;
  double rel_diff() const;
};

enum class Side { Left, Right };

/// Hadamard integral evaluated from its definition in t (lhs) against the
/// Riemann-Liouville integral of f o exp at ln t (rhs).
ConjugatePair conjugate_check(const Integrand& f, const FracParams& p, double t,
                              const QuadratureSpec& q = {}, Side side = Side::Left);

struct IbpResult {
  double lhs = 0.0;  // int_a^T (J_a^sigma f) g dt/t
  double rhs = 0.0;  // int_a^T f (J_T^sigma g) dt/t
  double error = 0.0;
  double residual() const { return lhs - rhs; }
  double relative() const;
};

/// Both sides of the Hadamard integration-by-parts identity.
IbpResult integration_by_parts(const Integrand& f, const Integrand& g, const FracParams& p,
                               const QuadratureSpec& q = {});

/// lhs - rhs of the identity above.
double integration_by_parts_residual(const Integrand& f, const Integrand& g,
                                     const FracParams& p, const QuadratureSpec& q = {});

}  // namespace hfrac
