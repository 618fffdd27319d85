#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hfrac {

/// Parameters (alpha, gamma, N, p, lambda = lambda1 + i lambda2, a) of
/// i^alpha D_a^alpha u + Delta u = lambda (ln t/a)^gamma |u|^p.
struct ProblemParams {
  double alpha = 0.5;
  double gamma = 0.0;
  int N = 1;
  double p = 2.0;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double a = 1.0;

  void validate() const;
};

/// (r_alpha, s_alpha) = (cos(pi alpha/2), sin(pi alpha/2)).
struct DualityCoefficients {
  double r_alpha = 1.0;
  double s_alpha = 0.0;
};

DualityCoefficients duality_coefficients(double alpha);

/// I1 = lambda1 int(r f1 - s f2), I2 = lambda2 int(s f1 + r f2).
struct SignFunctionals {
  double I1 = 0.0;
  double I2 = 0.0;
  bool any_positive() const { return I1 > 0.0 || I2 > 0.0; }
};

SignFunctionals sign_functionals(const ProblemParams& pp, double f1_integral,
                                 double f2_integral);

/// An open exponent interval (p_lower, p_upper) and whether its hypotheses hold.
struct ExponentRegion {
  bool admissible = false;
  double p_lower = 0.0;
  double p_upper = 0.0;
  bool contains(double p) const { return admissible && p_lower < p && p < p_upper; }
};

/// max{1, 1+gamma} < p < 1 + 2(alpha+gamma)/(N alpha), under gamma > -alpha and
/// gamma (N alpha - 2) < 2 alpha.
ExponentRegion region_T1(double alpha, double gamma, int N);

/// 1 + gamma < p < 1 + gamma/alpha, under gamma > 0.
ExponentRegion region_T2(double alpha, double gamma);

enum class Branch { T1, T2, Tie };
std::string to_string(Branch b);

struct CombinedRegion {
  ExponentRegion region;
  Branch active_branch = Branch::T1;
  double p_upper_T1 = 0.0;
  double p_upper_T2 = 0.0;
};

/// 1 + gamma < p < max{T1 upper, T2 upper}, under gamma > 0 and gamma(N alpha-2) < 2 alpha.
/// The branch follows the sign of (N-2) gamma - 2 alpha.
CombinedRegion region_combined(double alpha, double gamma, int N);

enum class Verdict { NonexistenceT1, NonexistenceT2, NonexistenceCorollary, Inconclusive };
std::string to_string(Verdict v);

struct Condition {
  std::string name;
  bool holds = false;
  std::optional<double> margin;  // signed slack; positive when the condition holds
};

struct ComparisonExponents {
  std::optional<double> kirane_nabti;  // 1 + 2(alpha+1)/(N - 2 alpha), N > 2 alpha
  double fujita = 0.0;                 // 1 + 2/N
};

struct CriterionReport {
  Verdict verdict = Verdict::Inconclusive;
  double p = 0.0;
  double p_lower = 0.0;
  std::optional<double> p_upper_T1;
  std::optional<double> p_upper_T2;
  std::optional<double> p_upper_combined;
  std::optional<Branch> active_branch;
  SignFunctionals sign;
  DualityCoefficients duality;
  std::vector<Condition> conditions;
  ComparisonExponents comparison_exponents;
  std::string note;

  /// Names of every condition that failed.
  std::vector<std::string> failed() const;
};

/// Checks the nonexistence criteria. The corollary takes precedence when gamma > 0 and
/// its hypotheses hold, then the first theorem, then the second. Inconclusive only means
/// these sufficient conditions fail.
CriterionReport evaluate(const ProblemParams& pp, const SignFunctionals& sf);

}  // namespace hfrac
