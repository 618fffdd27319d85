#include "hadamard_frac/estimate_probe.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/special.hpp"

namespace hfrac {

namespace {

double conjugate_exponent(double p) { return p / (p - 1.0); }

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

QuadratureSpec adaptive(const QuadratureSpec& q) {
  QuadratureSpec s = q;
  s.rule = QuadratureRule::AdaptiveGraded;
  s.rel_tol = std::max(q.rel_tol, 1e-12);
  return s;
}

}  // namespace

double ProbeConfig::resolved_kappa() const {
  return kappa > 0.0 ? kappa : default_kappa(pp.alpha, pp.p);
}

int ProbeConfig::resolved_ell() const { return ell > 0 ? ell : default_ell(pp.p); }

double ProbeConfig::resolved_theta() const { return theta ? *theta : 2.0 / pp.alpha; }

void ProbeConfig::validate() const {
  pp.validate();
  quad.validate();
  if (R_grid.empty()) throw DomainError("R grid must be nonempty");
  for (std::size_t i = 0; i < R_grid.size(); ++i) {
    if (!(std::isfinite(R_grid[i]) && R_grid[i] > 0.0)) {
      throw DomainError("R grid values must be positive and finite");
    }
    if (i > 0 && !(R_grid[i] > R_grid[i - 1])) throw DomainError("R grid must increase");
  }
  const double th = resolved_theta();
  if (!(std::isfinite(th) && th > 0.0)) throw DomainError("theta must be positive");
  if (kappa < 0.0 || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
  if (ell < 0) throw DomainError("ell must be positive");

  const double pc = conjugate_exponent(pp.p);
  const double k = resolved_kappa();
  const int l = resolved_ell();
  if (!(k > pp.alpha * pc)) {
    throw RegimeError("kappa = " + num(k) + " must exceed alpha p/(p-1) = " + num(pp.alpha * pc));
  }
  if (!(static_cast<double>(l) > 2.0 * pc)) {
    throw RegimeError("ell = " + std::to_string(l) + " must exceed 2p/(p-1) = " + num(2.0 * pc));
  }
  if (!(pp.gamma < pp.p - 1.0)) {
    throw RegimeError("gamma = " + num(pp.gamma) + " must be below p - 1 = " + num(pp.p - 1.0));
  }
}

K1Terms k1_terms(const ProbeConfig& cfg, double R, double log_span) {
  cfg.validate();
  const auto& pp = cfg.pp;
  const double pc = conjugate_exponent(pp.p);
  const double g = pp.gamma / (pp.p - 1.0);
  const double k = cfg.resolved_kappa();
  const double sigma = 1.0 - pp.alpha;
  const MuParams m = MuParams::from_log_span(pp.a, log_span, k);

  const auto density = [&](double y) {
    const double mu = mu_eval_log(m, y);
    if (mu <= 0.0) return 0.0;
    const double d = std::abs(mu_right_image_tderiv_log(m, sigma, y));
    return std::pow(mu, -1.0 / (pp.p - 1.0)) * std::pow(d, pc);
  };
  K1Terms out;
  out.K11_quad = weighted_integral(density, 0.0, log_span, -g, 0.0, cfg.quad).value;
  out.K11_bound = std::pow(gamma_ratio(k + 1.0, 1.0 - pp.alpha + k), pc) / (1.0 - g) *
                  std::pow(log_span, 1.0 - (pp.gamma + pp.alpha * pp.p) / (pp.p - 1.0));

  const CutoffParams c{R, cfg.resolved_ell(), pp.N};
  const double n = static_cast<double>(pp.N);
  const double ell = static_cast<double>(c.ell);
  const auto ramp = [&](double r) {
    return std::pow(cutoff_profile(r / R).value, ell) * std::pow(r, n - 1.0);
  };
  const double annulus = weighted_integral(ramp, R, 2.0 * R, 0.0, 0.0, adaptive(cfg.quad)).value;
  out.K12 = sphere_area(pp.N) * (std::pow(R, n) / n + annulus);
  out.K1 = out.K11_quad * out.K12;
  return out;
}

K2Terms k2_terms(const ProbeConfig& cfg, double R, double log_span) {
  cfg.validate();
  const auto& pp = cfg.pp;
  const double pc = conjugate_exponent(pp.p);
  const double g = pp.gamma / (pp.p - 1.0);
  const MuParams m = MuParams::from_log_span(pp.a, log_span, cfg.resolved_kappa());

  K2Terms out;
  out.K21_quad =
      weighted_integral([&](double y) { return mu_eval_log(m, y); }, 0.0, log_span, -g, 0.0,
                        cfg.quad)
          .value;
  out.K21_bound = std::pow(log_span, 1.0 - g) / (1.0 - g);

  const CutoffParams c{R, cfg.resolved_ell(), pp.N};
  const double n = static_cast<double>(pp.N);
  const double omega = sphere_area(pp.N);
  const auto dens = [&](double r) { return cutoff_k22_density(c, pp.p, r) * std::pow(r, n - 1.0); };
  out.K22 = omega * weighted_integral(dens, R, 2.0 * R, 0.0, 0.0, adaptive(cfg.quad)).value;

  const CutoffConstants cc = cutoff_constants(c);
  const double ell = static_cast<double>(c.ell);
  const double lap_const = ell * ((ell - 1.0) * cc.gradient * cc.gradient + cc.laplacian);
  out.K22_bound = std::pow(lap_const, pc) * std::pow(R, -2.0 * pc) * omega *
                  (std::pow(2.0 * R, n) - std::pow(R, n)) / n;
  out.K2 = out.K21_quad * out.K22;
  return out;
}

RExponents r_exponents(const ProblemParams& pp, double theta) {
  const double pm1 = pp.p - 1.0;
  const double n = static_cast<double>(pp.N);
  RExponents e;
  e.first = n + theta * (pp.alpha - (pp.gamma + pp.alpha * pp.p) / pm1);
  e.second = n - 2.0 * pp.p / pm1 + theta * (pp.alpha - pp.gamma / pm1);
  return e;
}

double decay_exponent(const ProblemParams& pp) {
  const double pm1 = pp.p - 1.0;
  return (static_cast<double>(pp.N) * pp.alpha * pm1 - 2.0 * (pp.alpha + pp.gamma)) /
         (pp.alpha * pm1);
}

int active_functional(const SignFunctionals& sf) {
  if (sf.I1 > 0.0) return 1;
  if (sf.I2 > 0.0) return 2;
  throw RegimeError("neither sign functional is positive (I1 = " + num(sf.I1) +
                    ", I2 = " + num(sf.I2) + ")");
}

ProbeRow master_inequality(const ProbeConfig& cfg, const InitialValue& f, double R) {
  cfg.validate();
  const auto& pp = cfg.pp;
  const int which = active_functional(sign_functionals(pp, f, cfg.quad));
  const double theta = cfg.resolved_theta();

  ProbeRow row;
  row.R = R;
  row.log_span = std::pow(R, theta);
  if (!std::isfinite(row.log_span)) throw DomainError("R^theta overflows");
  row.T = pp.a * std::exp(row.log_span);

  const K1Terms k1 = k1_terms(cfg, R, row.log_span);
  const K2Terms k2 = k2_terms(cfg, R, row.log_span);
  row.K11_quad = k1.K11_quad;
  row.K11_bound = k1.K11_bound;
  row.K12 = k1.K12;
  row.K1 = k1.K1;
  row.K21_quad = k2.K21_quad;
  row.K21_bound = k2.K21_bound;
  row.K22 = k2.K22;
  row.K22_bound = k2.K22_bound;
  row.K2 = k2.K2;

  const CutoffParams c{R, cfg.resolved_ell(), pp.N};
  const auto [F1, F2] = f.cutoff_integrals(c, cfg.quad);
  const DualityCoefficients d = duality_coefficients(pp.alpha);
  row.lhs = which == 1 ? pp.lambda1 * (d.r_alpha * F1 - d.s_alpha * F2)
                       : pp.lambda2 * (d.s_alpha * F1 + d.r_alpha * F2);
  const TestFunction tf{MuParams::from_log_span(pp.a, row.log_span, cfg.resolved_kappa()), c};
  const double factor = phi_weighted_image_at_a(tf, pp.alpha);
  row.lhs_weighted = factor * row.lhs;
  row.rhs_term1 = row.K1 / factor;
  row.rhs_term2 = row.K2 / factor;
  row.rhs_bound = row.rhs_term1 + row.rhs_term2;

  row.decay_exponent = decay_exponent(pp);
  const RExponents e = r_exponents(pp, theta);
  row.exponent1 = e.first;
  row.exponent2 = e.second;
  return row;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope needs two or more points");
  double mx = 0.0;
  double my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("log-log slope needs positive data");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

SweepResult sweep(const ProbeConfig& cfg, const InitialValue& f) {
  cfg.validate();
  SweepResult out;
  out.functional = active_functional(sign_functionals(cfg.pp, f, cfg.quad));
  out.theta = cfg.resolved_theta();
  out.decay_exponent = decay_exponent(cfg.pp);
  out.exponents = r_exponents(cfg.pp, out.theta);
  out.exponents_equal =
      std::abs(out.exponents.first - out.exponents.second) <=
      1e-12 * std::max({1.0, std::abs(out.exponents.first), std::abs(out.exponents.second)});
  out.contradiction_regime = out.decay_exponent < 0.0;

  std::vector<std::future<ProbeRow>> jobs;
  jobs.reserve(cfg.R_grid.size());
  for (double R : cfg.R_grid) {
    jobs.push_back(std::async(std::launch::async,
                              [&cfg, &f, R] { return master_inequality(cfg, f, R); }));
  }
  for (auto& j : jobs) out.rows.push_back(j.get());

  if (out.rows.size() >= 2) {
    std::vector<double> rs;
    std::vector<double> rhs;
    for (const auto& row : out.rows) {
      rs.push_back(row.R);
      rhs.push_back(row.rhs_bound);
    }
    out.slope = loglog_slope(rs, rhs);
  } else {
    out.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double young_constant(double eps, double p) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (!(p > 1.0)) throw DomainError("p must exceed 1");
  const double pc = conjugate_exponent(p);
  return std::pow(eps * p, -pc / p) / pc;
}

double young_check(double eps, double p, int samples, unsigned seed) {
  const double C = young_constant(eps, p);
  const double pc = conjugate_exponent(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logu(-6.0, 6.0);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double x = std::exp(logu(rng));
    const double y = std::exp(logu(rng));
    const double rhs = eps * std::pow(x, p) + C * std::pow(y, pc);
    worst = std::max(worst, (x * y - rhs) / rhs);
  }
  return worst;
}

SampledComplexField SampledComplexField::zeros(double a, double log_span, double R, int N,
                                               std::size_t ny, std::size_t nr) {
  SampledComplexField u;
  u.a = a;
  u.log_span = log_span;
  u.R = R;
  u.N = N;
  u.ny = ny;
  u.nr = nr;
  u.u1.assign(ny * nr, 0.0);
  u.u2.assign(ny * nr, 0.0);
  u.validate();
  return u;
}

SampledComplexField SampledComplexField::sample(
    double a, double log_span, double R, int N, std::size_t ny, std::size_t nr,
    const std::function<std::complex<double>(double, double)>& fn) {
  SampledComplexField u = zeros(a, log_span, R, N, ny, nr);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t k = 0; k < nr; ++k) {
      const std::complex<double> v = fn(u.y(j), u.r(k));
      u.u1[j * nr + k] = v.real();
      u.u2[j * nr + k] = v.imag();
    }
  }
  u.validate();
  return u;
}

double SampledComplexField::y(std::size_t j) const {
  return log_span * static_cast<double>(j) / static_cast<double>(ny - 1);
}

double SampledComplexField::r(std::size_t k) const {
  return 2.0 * R * static_cast<double>(k) / static_cast<double>(nr - 1);
}

void SampledComplexField::validate() const {
  if (!(a > 0.0 && log_span > 0.0 && R > 0.0) || N < 1) {
    throw DomainError("field needs a > 0, ln(T/a) > 0, R > 0 and N >= 1");
  }
  if (ny < 2 || nr < 2) throw DomainError("field grid needs at least two nodes per axis");
  if (u1.size() != ny * nr || u2.size() != ny * nr) {
    throw DomainError("field arrays do not match the grid shape");
  }
  for (std::size_t i = 0; i < u1.size(); ++i) {
    if (!std::isfinite(u1[i]) || !std::isfinite(u2[i])) {
      throw DomainError("field values must be finite");
    }
  }
}

namespace {

// Hat-function moments W_j = int hat_j(x) w(x) dx on a uniform grid over [0, span], where
// w(x) = x^e0 (span - x)^e1 s(x) and `w_full` evaluates w directly.
std::vector<double> hat_moments(std::size_t n, double span, double e0, double e1,
                                const std::function<double(double)>& w_full,
                                const QuadratureSpec& q) {
  std::vector<double> W(n, 0.0);
  const double h = span / static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = span * static_cast<double>(i) / static_cast<double>(n - 1);
    const double hi = i + 2 == n ? span : lo + h;
    const bool first = i == 0 && e0 != 0.0;
    const bool last = i + 2 == n && e1 != 0.0;
    const double le = first ? e0 : 0.0;
    const double re = last ? e1 : 0.0;
    const auto smooth = [&](double x) {
      double v = w_full(x);
      if (first) v /= std::pow(x, e0);
      if (last) v /= std::pow(span - x, e1);
      return v / h;
    };
    W[i] += weighted_integral(smooth, lo, hi, le, re + 1.0, q).value;
    W[i + 1] += weighted_integral(smooth, lo, hi, le + 1.0, re, q).value;
  }
  return W;
}

}  // namespace

WeakResiduals weak_residuals(const SampledComplexField& u, const ProbeConfig& cfg,
                             const InitialValue& f) {
  u.validate();
  const auto& pp = cfg.pp;
  pp.validate();
  if (u.N != pp.N) throw DomainError("grid mismatch: field dimension differs from N");
  if (u.a != pp.a) throw DomainError("grid mismatch: field start time differs from a");
  const double k = cfg.resolved_kappa();
  const int ell = cfg.resolved_ell();
  const double sigma = 1.0 - pp.alpha;
  const double L = u.log_span;
  const MuParams m = MuParams::from_log_span(pp.a, L, k);
  const CutoffParams c{u.R, ell, pp.N};
  const QuadratureSpec q = adaptive(cfg.quad);

  // Time weights after dt = t dy: phi dt = mu dy and d/dt J(t phi) dt = t (J mu)' dy.
  const auto mu = [&](double y) { return mu_eval_log(m, y); };
  const std::vector<double> wy_nl = hat_moments(
      u.ny, L, pp.gamma, k, [&](double y) { return std::pow(y, pp.gamma) * mu(y); }, q);
  const std::vector<double> wy_mu = hat_moments(u.ny, L, 0.0, k, mu, q);
  const std::vector<double> wy_dt = hat_moments(
      u.ny, L, 0.0, k - pp.alpha,
      [&](double y) { return mu_right_image_tderiv_log(m, sigma, y); }, q);

  const double omega = sphere_area(pp.N);
  const double n = static_cast<double>(pp.N);
  const std::vector<double> wr_xi = hat_moments(
      u.nr, 2.0 * u.R, 0.0, 0.0,
      [&](double r) { return omega * std::pow(cutoff_eval(c, r), ell) * std::pow(r, n - 1.0); }, q);
  const std::vector<double> wr_lap = hat_moments(
      u.nr, 2.0 * u.R, 0.0, 0.0,
      [&](double r) { return omega * laplacian_of_power(c, r) * std::pow(r, n - 1.0); }, q);

  const DualityCoefficients d = duality_coefficients(pp.alpha);
  WeakResiduals out;
  for (std::size_t j = 0; j < u.ny; ++j) {
    for (std::size_t kk = 0; kk < u.nr; ++kk) {
      const std::size_t idx = j * u.nr + kk;
      const double v1 = u.u1[idx];
      const double v2 = u.u2[idx];
      const double modp = std::pow(std::hypot(v1, v2), pp.p);
      out.nonlinear += modp * wy_nl[j] * wr_xi[kk];
      out.laplacian1 += v1 * wy_mu[j] * wr_lap[kk];
      out.laplacian2 += v2 * wy_mu[j] * wr_lap[kk];
      out.time1 += (d.r_alpha * v1 - d.s_alpha * v2) * wy_dt[j] * wr_xi[kk];
      out.time2 += (d.s_alpha * v1 + d.r_alpha * v2) * wy_dt[j] * wr_xi[kk];
    }
  }

  const TestFunction tf{m, c};
  const double factor = phi_weighted_image_at_a(tf, pp.alpha);
  const auto [F1, F2] = f.cutoff_integrals(c, cfg.quad);
  out.initial1 = factor * (d.r_alpha * F1 - d.s_alpha * F2);
  out.initial2 = factor * (d.s_alpha * F1 + d.r_alpha * F2);

  out.res1 = pp.lambda1 * out.nonlinear + out.initial1 - (out.laplacian1 - out.time1);
  out.res2 = pp.lambda2 * out.nonlinear + out.initial2 - (out.laplacian2 - out.time2);
  return out;
}

}  // namespace hfrac
