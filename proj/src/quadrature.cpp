#include "hadamard_frac/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <tuple>

#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/special.hpp"

namespace hfrac {

std::string to_string(QuadratureRule rule) {
  return rule == QuadratureRule::GaussJacobi ? "gauss-jacobi" : "adaptive-graded";
}

QuadratureRule quadrature_rule_from_string(const std::string& name) {
  if (name == "gauss-jacobi") return QuadratureRule::GaussJacobi;
  if (name == "adaptive-graded") return QuadratureRule::AdaptiveGraded;
  throw DomainError("unknown quadrature rule '" + name + "'");
}

void QuadratureSpec::validate() const {
  if (points < 4) throw DomainError("quadrature points must be >= 4");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
}

QuadratureSpec QuadratureSpec::from_environment() {
  QuadratureSpec spec;
  if (const char* env = std::getenv("HADAMARD_FRAC_QUAD_POINTS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 4 || n > 4096) {
      throw DomainError("HADAMARD_FRAC_QUAD_POINTS must be an integer in [4, 4096]");
    }
    spec.points = static_cast<int>(n);
  }
  return spec;
}

namespace {

// Golub-Welsch for the Jacobi weight (1 - x)^alpha (1 + x)^beta on [-1, 1], mapped to
// u = (1 + x) / 2 so that the weight becomes u^beta (1 - u)^alpha.
GaussRule build_gauss_jacobi(int n, double left_exp, double right_exp) {
  const double alpha = right_exp;
  const double beta = left_exp;
  const double ab = alpha + beta;

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double b2;
    if (k == 1) {
      // (k + alpha + beta) cancels against (s - 1) when alpha + beta = -1.
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((s * s) * (s + 1.0));
    } else {
      b2 = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mass = beta_fn(beta + 1.0, alpha + 1.0);  // moment on [0, 1]
  if (n == 1) {
    rule.nodes[0] = 0.5 * (1.0 + diag(0));
    rule.weights[0] = mass;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw QuadratureError("Gauss-Jacobi eigen-decomposition failed", 0.0, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (1.0 + solver.eigenvalues()(i));
    rule.weights[i] = mass * v0 * v0;
  }
  return rule;
}

struct RuleCache {
  std::mutex mutex;
  std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> rules;
};

RuleCache& rule_cache() {
  static RuleCache cache;
  return cache;
}

struct Problem {
  const RealFn& g;
  double lo;
  double hi;
  double left_exp;
  double right_exp;
};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
};

// Panel integral with n nodes. A panel touching a singular endpoint takes that power into
// its Gauss-Jacobi weight; other powers are evaluated explicitly (they are smooth there).
double panel_rule(const Problem& pb, double plo, double phi, int n, long& evals) {
  const double h = phi - plo;
  const bool weigh_left = pb.left_exp != 0.0 && plo == pb.lo;
  const bool weigh_right = pb.right_exp != 0.0 && phi == pb.hi;
  const double wl = weigh_left ? pb.left_exp : 0.0;
  const double wr = weigh_right ? pb.right_exp : 0.0;
  const GaussRule& rule = gauss_jacobi_rule(n, wl, wr);

  const double offset_lo = plo - pb.lo;
  const double offset_hi = pb.hi - phi;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rule.nodes[i];
    const double x = plo + h * u;
    double f = pb.g(x);
    if (pb.left_exp != 0.0 && !weigh_left) f *= std::pow(offset_lo + h * u, pb.left_exp);
    if (pb.right_exp != 0.0 && !weigh_right) {
      f *= std::pow(offset_hi + h * (1.0 - u), pb.right_exp);
    }
    sum += rule.weights[i] * f;
  }
  evals += n;
  return sum * std::pow(h, 1.0 + wl + wr);
}

Panel evaluate_panel(const Problem& pb, double plo, double phi, int n, long& evals) {
  Panel p{plo, phi, 0.0, 0.0};
  const double coarse = panel_rule(pb, plo, phi, n, evals);
  p.value = panel_rule(pb, plo, phi, 2 * n, evals);
  p.error = std::abs(p.value - coarse);
  if (!std::isfinite(p.value)) p.error = std::numeric_limits<double>::infinity();
  return p;
}

QuadResult adaptive(const Problem& pb, const QuadratureSpec& spec,
                    std::span<const double> breaks) {
  constexpr std::size_t kMaxPanels = 6000;
  const int n = std::max(8, spec.points / 2);
  const double width = pb.hi - pb.lo;

  std::vector<double> cuts{pb.lo};
  for (double b : breaks) {
    if (b > pb.lo && b < pb.hi) cuts.push_back(b);
  }
  cuts.push_back(pb.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto worse = [](const Panel& a, const Panel& b) { return a.error < b.error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
  std::vector<Panel> settled;  // too narrow to split further

  QuadResult out;
  double total = 0.0;
  double total_error = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = evaluate_panel(pb, cuts[i], cuts[i + 1], n, out.evaluations);
    total += p.value;
    total_error += p.error;
    total_abs += std::abs(p.value);
    queue.push(p);
  }

  while (!queue.empty()) {
    const double tol = spec.rel_tol * total_abs;
    if (total_error <= tol) break;
    if (queue.size() + settled.size() >= kMaxPanels) break;
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.hi - worst.lo < 1e-14 * width || mid <= worst.lo || mid >= worst.hi) {
      settled.push_back(worst);
      if (queue.empty()) break;
      continue;
    }
    Panel left = evaluate_panel(pb, worst.lo, mid, n, out.evaluations);
    Panel right = evaluate_panel(pb, mid, worst.hi, n, out.evaluations);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
    queue.push(left);
    queue.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_error = 0.0;
  total_abs = 0.0;
  auto accumulate = [&](const Panel& p) {
    total += p.value;
    total_error += p.error;
    total_abs += std::abs(p.value);
  };
  for (const Panel& p : settled) accumulate(p);
  while (!queue.empty()) {
    accumulate(queue.top());
    queue.pop();
  }
  out.value = total;
  out.error = total_error;
  if (!std::isfinite(total) || total_error > spec.rel_tol * total_abs) {
    throw QuadratureError("adaptive quadrature did not reach rel_tol", total, total_error);
  }
  return out;
}

}  // namespace

const GaussRule& gauss_jacobi_rule(int n, double left_exp, double right_exp) {
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  if (!(left_exp > -1.0) || !(right_exp > -1.0)) {
    throw DomainError("Gauss-Jacobi exponents must exceed -1");
  }
  RuleCache& cache = rule_cache();
  std::lock_guard lock(cache.mutex);
  auto key = std::make_tuple(n, left_exp, right_exp);
  auto it = cache.rules.find(key);
  if (it == cache.rules.end()) {
    auto rule = std::make_unique<GaussRule>(build_gauss_jacobi(n, left_exp, right_exp));
    it = cache.rules.emplace(key, std::move(rule)).first;
  }
  return *it->second;
}

QuadResult weighted_integral(const RealFn& g, double lo, double hi, double left_exp,
                             double right_exp, const QuadratureSpec& spec,
                             std::span<const double> breaks) {
  spec.validate();
  if (!(left_exp > -1.0) || !(right_exp > -1.0)) {
    throw DomainError("endpoint exponents must exceed -1 for an integrable weight");
  }
  if (!(hi >= lo)) throw DomainError("weighted_integral: need lo <= hi");
  if (hi == lo) return {};

  const Problem pb{g, lo, hi, left_exp, right_exp};
  bool has_breaks = false;
  for (double b : breaks) has_breaks = has_breaks || (b > lo && b < hi);

  if (spec.rule == QuadratureRule::GaussJacobi && !has_breaks) {
    constexpr int kMaxNodes = 256;
    QuadResult out;
    int n = spec.points;
    double coarse = panel_rule(pb, lo, hi, n, out.evaluations);
    while (2 * n <= kMaxNodes) {
      const double fine = panel_rule(pb, lo, hi, 2 * n, out.evaluations);
      const double err = std::abs(fine - coarse);
      if (std::isfinite(fine) && err <= spec.rel_tol * std::abs(fine)) {
        out.value = fine;
        out.error = err;
        return out;
      }
      coarse = fine;
      n *= 2;
    }
    QuadResult fallback = adaptive(pb, spec, breaks);
    fallback.evaluations += out.evaluations;
    return fallback;
  }
  return adaptive(pb, spec, breaks);
}

}  // namespace hfrac
