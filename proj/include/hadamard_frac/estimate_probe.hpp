#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hadamard_frac/criterion.hpp"
#include "hadamard_frac/initial_data.hpp"
#include "hadamard_frac/quadrature.hpp"
#include "hadamard_frac/test_functions.hpp"

namespace hfrac {

/// Test function phi(t, x) = mu(t)/t * xi_R^ell(x) swept over R with T = a exp(R^theta).
struct ProbeConfig {
  ProblemParams pp;
  double kappa = 0.0;  // 0 selects default_kappa(alpha, p)
  int ell = 0;         // 0 selects default_ell(p)
  std::vector<double> R_grid{10.0, 20.0, 40.0, 80.0};
  std::optional<double> theta;  // defaults to 2/alpha
  QuadratureSpec quad;

  double resolved_kappa() const;
  int resolved_ell() const;
  double resolved_theta() const;

  /// Throws RegimeError when kappa <= alpha p/(p-1), ell <= 2p/(p-1) or gamma >= p-1,
  /// DomainError on malformed values.
  void validate() const;
};

struct K1Terms {
  double K11_quad = 0.0;
  double K11_bound = 0.0;
  double K12 = 0.0;
  double K1 = 0.0;
};

struct K2Terms {
  double K21_quad = 0.0;
  double K21_bound = 0.0;
  double K22 = 0.0;
  double K22_bound = 0.0;  // from the measured cutoff constants
  double K2 = 0.0;
};

/// K1 = K11 K12 at radius R and log span L = ln(T/a).
K1Terms k1_terms(const ProbeConfig& cfg, double R, double log_span);
/// K2 = K21 K22 at radius R and log span L = ln(T/a).
K2Terms k2_terms(const ProbeConfig& cfg, double R, double log_span);

/// Power of R multiplying each right-hand term once T = a exp(R^theta).
struct RExponents {
  double first = 0.0;   // N + theta (alpha - (gamma + alpha p)/(p-1))
  double second = 0.0;  // N - 2p/(p-1) + theta (alpha - gamma/(p-1))
};
RExponents r_exponents(const ProblemParams& pp, double theta);

/// (N alpha (p-1) - 2(alpha + gamma)) / (alpha (p-1)).
double decay_exponent(const ProblemParams& pp);

struct ProbeRow {
  double R = 0.0;
  double log_span = 0.0;  // ln(T/a) = R^theta
  double T = 0.0;         // a exp(log_span); inf when not representable
  double K11_quad = 0.0;
  double K11_bound = 0.0;
  double K12 = 0.0;
  double K21_quad = 0.0;
  double K21_bound = 0.0;
  double K22 = 0.0;
  double K22_bound = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  double lhs = 0.0;           // lambda_j int(...) xi_R^ell dx
  double lhs_weighted = 0.0;  // lhs times the J_T^(1-alpha)(t phi)(a) factor
  double rhs_term1 = 0.0;     // K1 / factor
  double rhs_term2 = 0.0;     // K2 / factor
  double rhs_bound = 0.0;     // (K1 + K2) / factor
  double decay_exponent = 0.0;
  double exponent1 = 0.0;
  double exponent2 = 0.0;

  bool k11_ok(double tol) const { return K11_quad <= K11_bound * (1.0 + tol); }
  bool k21_ok(double tol) const { return K21_quad <= K21_bound * (1.0 + tol); }
  bool k22_ok(double tol) const { return K22 <= K22_bound * (1.0 + tol); }
};

/// Which sign functional drives the probe: 1 for I1 > 0, 2 for I2 > 0.
int active_functional(const SignFunctionals& sf);

/// One row of the master inequality at radius R. Throws RegimeError when neither sign
/// functional of f is positive.
ProbeRow master_inequality(const ProbeConfig& cfg, const InitialValue& f, double R);

struct SweepResult {
  std::vector<ProbeRow> rows;
  double slope = 0.0;  // least-squares d ln(rhs_bound) / d ln R
  double decay_exponent = 0.0;
  RExponents exponents;
  double theta = 0.0;
  bool exponents_equal = false;
  bool contradiction_regime = false;  // decay exponent < 0
  int functional = 1;
};

/// master_inequality over cfg.R_grid, rows computed concurrently and returned in R order.
SweepResult sweep(const ProbeConfig& cfg, const InitialValue& f);

/// Least-squares slope of ln y against ln x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Smallest C with x y <= eps x^p + C y^(p/(p-1)) for all x, y >= 0.
double young_constant(double eps, double p);

/// Largest x y - (eps x^p + C y^(p/(p-1))) over `samples` random nonnegative pairs.
double young_check(double eps, double p, int samples, unsigned seed = 1);

/// u = u1 + i u2 on the tensor grid y_j = L j/(ny-1) (y = ln t/a), r_k = 2R k/(nr-1).
struct SampledComplexField {
  double a = 1.0;
  double log_span = 1.0;
  double R = 1.0;
  int N = 1;
  std::size_t ny = 0;
  std::size_t nr = 0;
  std::vector<double> u1;  // row-major, index j * nr + k
  std::vector<double> u2;

  static SampledComplexField zeros(double a, double log_span, double R, int N, std::size_t ny,
                                   std::size_t nr);
  static SampledComplexField sample(double a, double log_span, double R, int N,
                                    std::size_t ny, std::size_t nr,
                                    const std::function<std::complex<double>(double, double)>& u);

  double y(std::size_t j) const;
  double r(std::size_t k) const;
  void validate() const;
};

struct WeakResiduals {
  double res1 = 0.0;
  double res2 = 0.0;
  // Pieces of the first identity; the second uses the same four integral kinds.
  double nonlinear = 0.0;     // int (ln t/a)^gamma |u|^p phi
  double initial1 = 0.0;      // int (r f1 - s f2) J(t phi)(a)
  double initial2 = 0.0;      // int (s f1 + r f2) J(t phi)(a)
  double laplacian1 = 0.0;    // int u1 Delta phi
  double laplacian2 = 0.0;    // int u2 Delta phi
  double time1 = 0.0;         // int (r u1 - s u2) d/dt J(t phi)
  double time2 = 0.0;         // int (s u1 + r u2) d/dt J(t phi)
};

/// Both sides of the weak formulation for phi = mu(t)/t xi_R^ell(x) with T = a exp(L),
/// using the field's a, L and R. The field is interpolated bilinearly (|u|^p is
/// interpolated from its nodal values) and integrated exactly against the weights.
WeakResiduals weak_residuals(const SampledComplexField& u, const ProbeConfig& cfg,
                             const InitialValue& f);

}  // namespace hfrac
