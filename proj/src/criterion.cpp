#include "hadamard_frac/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hadamard_frac/errors.hpp"

namespace hfrac {

void ProblemParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
  if (N < 1) throw DomainError("N must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must exceed 1");
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2)) {
    throw DomainError("lambda must be finite");
  }
  if (lambda1 == 0.0 && lambda2 == 0.0) throw DomainError("lambda must be nonzero");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be > 0");
}

DualityCoefficients duality_coefficients(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  const double angle = 0.5 * std::numbers::pi * alpha;
  return {std::cos(angle), std::sin(angle)};
}

SignFunctionals sign_functionals(const ProblemParams& pp, double f1_integral,
                                 double f2_integral) {
  pp.validate();
  if (!std::isfinite(f1_integral) || !std::isfinite(f2_integral)) {
    throw DomainError("initial-data integrals must be finite");
  }
  const DualityCoefficients d = duality_coefficients(pp.alpha);
  return {pp.lambda1 * (d.r_alpha * f1_integral - d.s_alpha * f2_integral),
          pp.lambda2 * (d.s_alpha * f1_integral + d.r_alpha * f2_integral)};
}

ExponentRegion region_T1(double alpha, double gamma, int N) {
  const double n = static_cast<double>(N);
  ExponentRegion r;
  r.admissible = gamma > -alpha && gamma * (n * alpha - 2.0) < 2.0 * alpha;
  r.p_lower = std::max(1.0, 1.0 + gamma);
  r.p_upper = 1.0 + 2.0 * (alpha + gamma) / (n * alpha);
  return r;
}

ExponentRegion region_T2(double alpha, double gamma) {
  ExponentRegion r;
  r.admissible = gamma > 0.0;
  r.p_lower = 1.0 + gamma;
  r.p_upper = 1.0 + gamma / alpha;
  return r;
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::T1:
      return "T1";
    case Branch::T2:
      return "T2";
    case Branch::Tie:
      return "tie";
  }
  return "?";
}

CombinedRegion region_combined(double alpha, double gamma, int N) {
  const double n = static_cast<double>(N);
  CombinedRegion c;
  c.p_upper_T1 = region_T1(alpha, gamma, N).p_upper;
  c.p_upper_T2 = region_T2(alpha, gamma).p_upper;
  c.region.admissible = gamma > 0.0 && gamma * (n * alpha - 2.0) < 2.0 * alpha;
  c.region.p_lower = 1.0 + gamma;
  const double lhs = (n - 2.0) * gamma;
  const double rhs = 2.0 * alpha;
  if (lhs < rhs) {
    c.active_branch = Branch::T1;
  } else if (lhs > rhs) {
    c.active_branch = Branch::T2;
  } else {
    c.active_branch = Branch::Tie;
  }
  c.region.p_upper = std::max(c.p_upper_T1, c.p_upper_T2);
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NonexistenceT1:
      return "NonexistenceT1";
    case Verdict::NonexistenceT2:
      return "NonexistenceT2";
    case Verdict::NonexistenceCorollary:
      return "NonexistenceCorollary";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::vector<std::string> CriterionReport::failed() const {
  std::vector<std::string> out;
  for (const Condition& c : conditions) {
    if (!c.holds) out.push_back(c.name);
  }
  return out;
}

CriterionReport evaluate(const ProblemParams& pp, const SignFunctionals& sf) {
  pp.validate();
  const double alpha = pp.alpha;
  const double gamma = pp.gamma;
  const double n = static_cast<double>(pp.N);
  const double p = pp.p;

  CriterionReport rep;
  rep.p = p;
  rep.sign = sf;
  rep.duality = duality_coefficients(alpha);
  rep.comparison_exponents.fujita = 1.0 + 2.0 / n;
  if (n > 2.0 * alpha) {
    rep.comparison_exponents.kirane_nabti = 1.0 + 2.0 * (alpha + 1.0) / (n - 2.0 * alpha);
  }

  auto add = [&](std::string name, bool holds, std::optional<double> margin) {
    rep.conditions.push_back({std::move(name), holds, margin});
    return holds;
  };

  const bool evidence = add("I1 > 0 or I2 > 0", sf.any_positive(), std::max(sf.I1, sf.I2));

  const ExponentRegion t1 = region_T1(alpha, gamma, pp.N);
  rep.p_upper_T1 = t1.p_upper;
  bool t1_ok = add("gamma > -alpha", gamma > -alpha, gamma + alpha);
  t1_ok = add("gamma*(N*alpha-2) < 2*alpha", gamma * (n * alpha - 2.0) < 2.0 * alpha,
              2.0 * alpha - gamma * (n * alpha - 2.0)) &&
          t1_ok;
  t1_ok = add("p > p_lower_T1", p > t1.p_lower, p - t1.p_lower) && t1_ok;
  t1_ok = add("p < p_upper_T1", p < t1.p_upper, t1.p_upper - p) && t1_ok;

  const ExponentRegion t2 = region_T2(alpha, gamma);
  bool t2_ok = add("gamma > 0", gamma > 0.0, gamma);
  if (t2.admissible) {
    rep.p_upper_T2 = t2.p_upper;
    t2_ok = add("p > p_lower_T2", p > t2.p_lower, p - t2.p_lower) && t2_ok;
    t2_ok = add("p < p_upper_T2", p < t2.p_upper, t2.p_upper - p) && t2_ok;
  }

  bool corollary_ok = false;
  if (gamma > 0.0) {
    const CombinedRegion comb = region_combined(alpha, gamma, pp.N);
    rep.p_upper_combined = comb.region.p_upper;
    rep.active_branch = comb.active_branch;
    corollary_ok = comb.region.admissible;
    corollary_ok = add("p > p_lower_combined", p > comb.region.p_lower,
                       p - comb.region.p_lower) &&
                   corollary_ok;
    corollary_ok =
        add("p < p_upper_combined", p < comb.region.p_upper, comb.region.p_upper - p) &&
        corollary_ok;
  }

  rep.p_lower = gamma > 0.0 ? 1.0 + gamma : t1.p_lower;

  if (evidence && corollary_ok) {
    rep.verdict = Verdict::NonexistenceCorollary;
  } else if (evidence && t1_ok) {
    rep.verdict = Verdict::NonexistenceT1;
  } else if (evidence && t2_ok) {
    rep.verdict = Verdict::NonexistenceT2;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }

  if (rep.verdict == Verdict::Inconclusive) {
    rep.note =
        "The sufficient conditions for nonexistence of global weak solutions are not met; "
        "this makes no claim that a global solution exists.";
  } else {
    rep.note = "No global weak solution exists under the stated hypotheses.";
  }
  return rep;
}

}  // namespace hfrac
