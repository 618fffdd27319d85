#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hfrac {

enum class QuadratureRule { GaussJacobi, AdaptiveGraded };

std::string to_string(QuadratureRule rule);
QuadratureRule quadrature_rule_from_string(const std::string& name);

struct QuadratureSpec {
  QuadratureRule rule = QuadratureRule::GaussJacobi;
  int points = 16;
  double rel_tol = 1e-12;

  /// Throws DomainError unless points >= 4 and rel_tol in (0, 1).
  void validate() const;

  /// Defaults, with `points` overridden by HADAMARD_FRAC_QUAD_POINTS when set.
  static QuadratureSpec from_environment();
};

/// Gauss rule on [0, 1] for the weight u^left_exp (1 - u)^right_exp.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached Golub-Welsch Gauss-Jacobi rule. Exponents must exceed -1.
const GaussRule& gauss_jacobi_rule(int n, double left_exp, double right_exp);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // |Q_n - Q_2n| summed over panels
  long evaluations = 0;
};

using RealFn = std::function<double(double)>;

/// Integral of (x - lo)^left_exp (hi - x)^right_exp g(x) over [lo, hi] for smooth g.
///
/// The endpoint powers are absorbed into Gauss-Jacobi weights, never sampled. Error
/// estimates come from node-count doubling. With the GaussJacobi rule and no
/// breakpoints a single panel is refined by doubling n up to 256; otherwise (or if that
/// does not converge) an adaptive composite rule bisects the worst panel, keeping the
/// singular weight on whichever child touches the singular endpoint, which grades the
/// mesh geometrically. Breakpoints (strictly inside (lo, hi)) seed the initial panels.
/// Throws QuadratureError when the tolerance cannot be met.
QuadResult weighted_integral(const RealFn& g, double lo, double hi, double left_exp,
                             double right_exp, const QuadratureSpec& spec,
                             std::span<const double> breaks = {});

}  // namespace hfrac
