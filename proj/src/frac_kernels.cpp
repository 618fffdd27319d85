#include "hadamard_frac/frac_kernels.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <sstream>

#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/special.hpp"

namespace hfrac {

void FracParams::validate() const {
  if (!std::isfinite(sigma) || sigma <= 0.0) throw DomainError("sigma must be > 0");
  if (!std::isfinite(a) || a <= 0.0) throw DomainError("a must be > 0");
  if (!std::isfinite(T) || T <= a) throw DomainError("T must exceed a");
}

double FracParams::log_span() const { return std::log(T / a); }

// ---------------------------------------------------------------------------------------
// LogGridFunction

struct LogGridFunction::Interpolant {
  std::optional<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline;
  double y0 = 0.0;
  double h = 1.0;
  std::vector<double> linear;  // used when the spline is absent
};

LogGridFunction::LogGridFunction(double a, double T, std::vector<double> values)
    : a_(a), T_(T), values_(std::move(values)) {
  if (!(a > 0.0) || !(T > a) || !std::isfinite(T)) {
    throw DomainError("LogGridFunction: need 0 < a < T");
  }
  if (values_.size() < 2) throw DomainError("LogGridFunction: need at least 2 samples");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("LogGridFunction: samples must be finite");
  }
  auto interp = std::make_shared<Interpolant>();
  interp->y0 = std::log(a_);
  interp->h = log_step();
  if (values_.size() >= 5) {
    interp->spline.emplace(values_.begin(), values_.end(), interp->y0, interp->h);
  } else {
    interp->linear = values_;
  }
  interp_ = std::move(interp);
}

LogGridFunction LogGridFunction::sample(double a, double T, std::size_t n,
                                        const std::function<double(double)>& f) {
  if (n < 2) throw DomainError("LogGridFunction: need at least 2 samples");
  std::vector<double> values(n);
  const double y0 = std::log(a);
  const double h = std::log(T / a) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = k + 1 == n ? T : std::exp(y0 + h * static_cast<double>(k));
    values[k] = f(k == 0 ? a : t);
  }
  return LogGridFunction(a, T, std::move(values));
}

double LogGridFunction::log_step() const {
  return std::log(T_ / a_) / static_cast<double>(values_.size() - 1);
}

double LogGridFunction::log_node(std::size_t k) const {
  return std::log(a_) + log_step() * static_cast<double>(k);
}

double LogGridFunction::node(std::size_t k) const {
  if (k == 0) return a_;
  if (k + 1 == values_.size()) return T_;
  return std::exp(log_node(k));
}

double LogGridFunction::operator()(double t) const { return at_log(std::log(t)); }

double LogGridFunction::at_log(double log_t) const {
  const Interpolant& in = *interp_;
  const double y_end = in.y0 + in.h * static_cast<double>(values_.size() - 1);
  const double y = std::clamp(log_t, in.y0, y_end);
  if (in.spline) return (*in.spline)(y);
  const double pos = (y - in.y0) / in.h;
  const auto k = std::min(static_cast<std::size_t>(pos), values_.size() - 2);
  const double w = pos - static_cast<double>(k);
  return (1.0 - w) * in.linear[k] + w * in.linear[k + 1];
}

LogGridFunction LogGridFunction::log_derivative() const {
  const std::size_t n = values_.size();
  const double h = log_step();
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (values_[1] - values_[0]) / h;
  } else {
    d[0] = (-3.0 * values_[0] + 4.0 * values_[1] - values_[2]) / (2.0 * h);
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (values_[k + 1] - values_[k - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * values_[n - 1] - 4.0 * values_[n - 2] + values_[n - 3]) / (2.0 * h);
  }
  return LogGridFunction(a_, T_, std::move(d));
}

// ---------------------------------------------------------------------------------------
// Integrand

Integrand Integrand::constant(double c) {
  if (!std::isfinite(c)) throw DomainError("Constant integrand must be finite");
  return Integrand(Constant{c});
}

Integrand Integrand::log_power(double beta) {
  if (!(beta > -1.0) || !std::isfinite(beta)) throw DomainError("LogPower requires beta > -1");
  return Integrand(LogPower{beta});
}

Integrand Integrand::mu_family(double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw DomainError("MuFamily requires kappa >= 1");
  return Integrand(MuFamily{kappa});
}

Integrand Integrand::linear_power(double beta) {
  if (!(beta > -1.0) || !std::isfinite(beta)) {
    throw DomainError("LinearPower requires beta > -1");
  }
  return Integrand(LinearPower{beta});
}

Integrand Integrand::sampled(LogGridFunction grid) {
  return Integrand(Sampled{std::make_shared<const LogGridFunction>(std::move(grid))});
}

Integrand Integrand::callable(std::function<double(double)> fn,
                              std::function<double(double)> log_derivative, double log_exp) {
  if (!fn) throw DomainError("Callable integrand needs a function");
  if (!(log_exp > -1.0)) throw DomainError("Callable log exponent must exceed -1");
  return Integrand(Callable{std::move(fn), std::move(log_derivative), log_exp});
}

std::string Integrand::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Constant>) os << "const:" << f.c;
        if constexpr (std::is_same_v<F, LogPower>) os << "logpow:" << f.beta;
        if constexpr (std::is_same_v<F, MuFamily>) os << "mu:kappa=" << f.kappa;
        if constexpr (std::is_same_v<F, LinearPower>) os << "pow:" << f.beta;
        if constexpr (std::is_same_v<F, Sampled>) os << "sampled:n=" << f.grid->size();
        if constexpr (std::is_same_v<F, Callable>) os << "callable";
      },
      form_);
  return os.str();
}

double Integrand::evaluate(double t, const FracParams& p) const {
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Constant>) return f.c;
        if constexpr (std::is_same_v<F, LogPower>) {
          return f.beta == 0.0 ? 1.0 : std::pow(std::log(t / p.a), f.beta);
        }
        if constexpr (std::is_same_v<F, MuFamily>) {
          return std::pow(std::log(p.T / t) / std::log(p.T / p.a), f.kappa);
        }
        if constexpr (std::is_same_v<F, LinearPower>) {
          return f.beta == 0.0 ? 1.0 : std::pow(t - p.a, f.beta);
        }
        if constexpr (std::is_same_v<F, Sampled>) return (*f.grid)(t);
        if constexpr (std::is_same_v<F, Callable>) return f.fn(t);
      },
      form_);
}

// ---------------------------------------------------------------------------------------
// Operator engine

namespace {

// f(x) = (x - lo)^lo_exp (hi - x)^hi_exp smooth(x) on [lo, hi] in a native coordinate
// (t itself, or ln t). `smooth` receives both offsets x - lo and hi - x so it can use
// whichever is exact.
using SmoothFn = std::function<double(double off_lo, double off_hi)>;

struct Factored {
  double lo = 0.0;
  double hi = 0.0;
  double lo_exp = 0.0;
  double hi_exp = 0.0;
  SmoothFn smooth;
  std::vector<double> breaks;  // native coordinates
  bool identically_zero = false;

  double width() const { return hi - lo; }
};

enum class Coord { Linear, Log };

// ln(1 + v) / v, continuous at 0.
double log1p_ratio(double v) { return v == 0.0 ? 1.0 : std::log1p(v) / v; }
// (e^v - 1) / v, continuous at 0.
double expm1_ratio(double v) { return v == 0.0 ? 1.0 : std::expm1(v) / v; }

double pow_or_one(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

Factored factor(const Integrand& in, const FracParams& p, Coord coord) {
  Factored out;
  const double a = p.a;
  const double T = p.T;
  const double span = std::log(T / a);
  if (coord == Coord::Log) {
    out.lo = std::log(a);
    out.hi = std::log(T);
  } else {
    out.lo = a;
    out.hi = T;
  }

  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Integrand::Constant>) {
          const double c = f.c;
          out.identically_zero = c == 0.0;
          out.smooth = [c](double, double) { return c; };
        } else if constexpr (std::is_same_v<F, Integrand::LogPower>) {
          const double beta = f.beta;
          out.lo_exp = beta;
          if (coord == Coord::Log) {
            out.smooth = [](double, double) { return 1.0; };
          } else {
            // ln(s/a) = (s - a) * ln(1 + d/a)/d
            out.smooth = [a, beta](double d, double) {
              return pow_or_one(log1p_ratio(d / a) / a, beta);
            };
          }
        } else if constexpr (std::is_same_v<F, Integrand::MuFamily>) {
          const double kappa = f.kappa;
          const double scale = std::pow(span, -kappa);
          out.hi_exp = kappa;
          if (coord == Coord::Log) {
            out.smooth = [scale](double, double) { return scale; };
          } else {
            // ln(T/s) = (T - s) * ln(1 + d/s)/d with d = T - s
            out.smooth = [scale, kappa, T](double, double d) {
              const double s = T - d;
              return scale * std::pow(log1p_ratio(d / s) / s, kappa);
            };
          }
        } else if constexpr (std::is_same_v<F, Integrand::LinearPower>) {
          const double beta = f.beta;
          out.lo_exp = beta;
          if (coord == Coord::Log) {
            // e^y - a = a (e^v - 1), v = y - ln a
            out.smooth = [a, beta](double v, double) {
              return pow_or_one(a * expm1_ratio(v), beta);
            };
          } else {
            out.smooth = [](double, double) { return 1.0; };
          }
        } else if constexpr (std::is_same_v<F, Integrand::Sampled>) {
          auto grid = f.grid;
          if (std::abs(grid->a() - a) > 1e-12 * a || std::abs(grid->T() - T) > 1e-12 * T) {
            throw DomainError("Sampled integrand grid does not span the operator interval");
          }
          const double lo = out.lo;
          const double hi = out.hi;
          if (coord == Coord::Log) {
            out.smooth = [grid, lo, hi](double ol, double oh) {
              return grid->at_log(ol <= oh ? lo + ol : hi - oh);
            };
          } else {
            out.smooth = [grid, lo, hi](double ol, double oh) {
              return (*grid)(ol <= oh ? lo + ol : hi - oh);
            };
          }
          for (std::size_t k = 1; k + 1 < grid->size(); ++k) {
            out.breaks.push_back(coord == Coord::Log ? grid->log_node(k) : grid->node(k));
          }
        } else if constexpr (std::is_same_v<F, Integrand::Callable>) {
          auto fn = f.fn;
          const double e = f.log_exp;
          out.lo_exp = e;
          const double lo = out.lo;
          const double hi = out.hi;
          if (coord == Coord::Log) {
            out.smooth = [fn, e, lo, hi](double ol, double oh) {
              const double y = ol <= oh ? lo + ol : hi - oh;
              return fn(std::exp(y)) / pow_or_one(ol, e);
            };
          } else {
            out.smooth = [fn, e, lo, hi](double ol, double oh) {
              const double s = ol <= oh ? lo + ol : hi - oh;
              return fn(s) / pow_or_one(ol, e);
            };
          }
        }
      },
      in.form());
  return out;
}

// Factored form, in ln t, of t f'(t).
Factored log_derivative_factor(const Integrand& in, const FracParams& p) {
  Factored out;
  out.lo = std::log(p.a);
  out.hi = std::log(p.T);
  const double span = std::log(p.T / p.a);
  const double a = p.a;

  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Integrand::Constant>) {
          out.identically_zero = true;
        } else if constexpr (std::is_same_v<F, Integrand::LogPower>) {
          if (f.beta < 0.0) {
            throw DomainError("LogPower with beta < 0 is not absolutely continuous at a");
          }
          if (f.beta == 0.0) {
            out.identically_zero = true;
            return;
          }
          const double beta = f.beta;
          out.lo_exp = beta - 1.0;
          out.smooth = [beta](double, double) { return beta; };
        } else if constexpr (std::is_same_v<F, Integrand::MuFamily>) {
          const double kappa = f.kappa;
          const double scale = -kappa * std::pow(span, -kappa);
          out.hi_exp = kappa - 1.0;
          out.smooth = [scale](double, double) { return scale; };
        } else if constexpr (std::is_same_v<F, Integrand::LinearPower>) {
          if (f.beta < 0.0) {
            throw DomainError("LinearPower with beta < 0 is not absolutely continuous at a");
          }
          if (f.beta == 0.0) {
            out.identically_zero = true;
            return;
          }
          const double beta = f.beta;
          out.lo_exp = beta - 1.0;
          // d/dy (e^y - a)^beta = beta e^y (e^y - a)^(beta - 1)
          out.smooth = [a, beta](double v, double) {
            return beta * a * std::exp(v) * pow_or_one(a * expm1_ratio(v), beta - 1.0);
          };
        } else if constexpr (std::is_same_v<F, Integrand::Sampled>) {
          out = factor(Integrand::sampled(f.grid->log_derivative()), p, Coord::Log);
        } else if constexpr (std::is_same_v<F, Integrand::Callable>) {
          if (!f.log_derivative) {
            throw DomainError("Callable integrand has no derivative; cannot differentiate");
          }
          out = factor(Integrand::callable(f.log_derivative, {},
                                           f.log_exp > 0.0 ? f.log_exp - 1.0 : 0.0),
                       p, Coord::Log);
        }
      },
      in.form());
  return out;
}

std::vector<double> offsets_from(double origin, double sign, const std::vector<double>& pts) {
  std::vector<double> out;
  out.reserve(pts.size());
  for (double x : pts) out.push_back(sign * (x - origin));
  return out;
}

// 1/Gamma(sigma) int_lo^x0 (x0 - x)^(sigma - 1) f(x) dx with x0 = lo + depth.
Approx left_kernel(const Factored& f, double sigma, double depth, const QuadratureSpec& q) {
  if (f.identically_zero || depth <= 0.0) return {};
  const double W = f.width();
  const bool at_hi = depth >= W;
  const double gap = at_hi ? 0.0 : W - depth;  // hi - x0
  // u = x0 - x in [0, depth]
  auto g = [&](double u) {
    const double off_lo = depth - u;
    const double off_hi = gap + u;
    double v = f.smooth(off_lo, off_hi);
    if (!at_hi && f.hi_exp != 0.0) v *= std::pow(off_hi, f.hi_exp);
    return v;
  };
  const double x0 = f.lo + depth;
  const auto breaks = offsets_from(x0, -1.0, f.breaks);
  const double left_exp = sigma - 1.0 + (at_hi ? f.hi_exp : 0.0);
  const QuadResult r = weighted_integral(g, 0.0, depth, left_exp, f.lo_exp, q, breaks);
  const double gs = gamma_fn(sigma);
  return {r.value / gs, r.error / gs};
}

// 1/Gamma(sigma) int_x0^hi (x - x0)^(sigma - 1) f(x) dx with x0 = hi - reach.
Approx right_kernel(const Factored& f, double sigma, double reach, const QuadratureSpec& q) {
  if (f.identically_zero || reach <= 0.0) return {};
  const double W = f.width();
  const bool at_lo = reach >= W;
  const double gap = at_lo ? 0.0 : W - reach;  // x0 - lo
  auto g = [&](double u) {
    const double off_lo = gap + u;
    const double off_hi = reach - u;
    double v = f.smooth(off_lo, off_hi);
    if (!at_lo && f.lo_exp != 0.0) v *= std::pow(off_lo, f.lo_exp);
    return v;
  };
  const double x0 = f.hi - reach;
  const auto breaks = offsets_from(x0, 1.0, f.breaks);
  const double left_exp = sigma - 1.0 + (at_lo ? f.lo_exp : 0.0);
  const QuadResult r = weighted_integral(g, 0.0, reach, left_exp, f.hi_exp, q, breaks);
  const double gs = gamma_fn(sigma);
  return {r.value / gs, r.error / gs};
}

// Validates t in [a, T], snapping values within rounding of an endpoint onto it.
double checked_time(double t, const FracParams& p) {
  if (!std::isfinite(t)) throw DomainError("evaluation point must be finite");
  const double slack = 1e-14 * p.T;
  if (t < p.a - slack || t > p.T + slack) {
    std::ostringstream os;
    os << "evaluation point t = " << t << " outside [" << p.a << ", " << p.T << "]";
    throw DomainError(os.str());
  }
  return std::clamp(t, p.a, p.T);
}

double log_depth(double t, const FracParams& p) { return t == p.a ? 0.0 : std::log(t / p.a); }
double log_reach(double t, const FracParams& p) { return t == p.T ? 0.0 : std::log(p.T / t); }

void check_order(double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) throw DomainError("order sigma must be > 0");
}

// 1/Gamma(sigma) int_a^t (ln t/s)^(sigma - 1) f(s) ds/s evaluated in t itself.
Approx hadamard_left_direct(const Factored& f, double sigma, double t, const FracParams& p,
                            const QuadratureSpec& q) {
  if (f.identically_zero || t == p.a) return {};
  const double depth = t - p.a;
  const bool at_hi = t == p.T;
  const double gap = p.T - t;
  // u = t - s; ln(t/s) = u * r(u) with r(u) = -ln(1 - u/t)/u
  auto g = [&](double u) {
    const double s = t - u;
    const double r = u == 0.0 ? 1.0 / t : -std::log1p(-u / t) / u;
    double v = std::pow(r, sigma - 1.0) * f.smooth(depth - u, gap + u) / s;
    if (!at_hi && f.hi_exp != 0.0) v *= std::pow(gap + u, f.hi_exp);
    return v;
  };
  const auto breaks = offsets_from(t, -1.0, f.breaks);
  const double left_exp = sigma - 1.0 + (at_hi ? f.hi_exp : 0.0);
  const QuadResult r = weighted_integral(g, 0.0, depth, left_exp, f.lo_exp, q, breaks);
  const double gs = gamma_fn(sigma);
  return {r.value / gs, r.error / gs};
}

Approx hadamard_right_direct(const Factored& f, double sigma, double t, const FracParams& p,
                             const QuadratureSpec& q) {
  if (f.identically_zero || t == p.T) return {};
  const double reach = p.T - t;
  const bool at_lo = t == p.a;
  const double gap = t - p.a;
  // u = s - t; ln(s/t) = u * log1p(u/t)/u
  auto g = [&](double u) {
    const double s = t + u;
    const double r = log1p_ratio(u / t) / t;
    double v = std::pow(r, sigma - 1.0) * f.smooth(gap + u, reach - u) / s;
    if (!at_lo && f.lo_exp != 0.0) v *= std::pow(gap + u, f.lo_exp);
    return v;
  };
  const auto breaks = offsets_from(t, 1.0, f.breaks);
  const double left_exp = sigma - 1.0 + (at_lo ? f.lo_exp : 0.0);
  const QuadResult r = weighted_integral(g, 0.0, reach, left_exp, f.hi_exp, q, breaks);
  const double gs = gamma_fn(sigma);
  return {r.value / gs, r.error / gs};
}

}  // namespace

// ---------------------------------------------------------------------------------------
// Public operators

Approx rl_left_integral(const Integrand& f, const FracParams& p, double t,
                        const QuadratureSpec& q) {
  p.validate();
  t = checked_time(t, p);
  return left_kernel(factor(f, p, Coord::Linear), p.sigma, t - p.a, q);
}

Approx rl_right_integral(const Integrand& f, const FracParams& p, double t,
                         const QuadratureSpec& q) {
  p.validate();
  t = checked_time(t, p);
  return right_kernel(factor(f, p, Coord::Linear), p.sigma, p.T - t, q);
}

Approx hadamard_left_integral(const Integrand& f, const FracParams& p, double t,
                              const QuadratureSpec& q) {
  p.validate();
  t = checked_time(t, p);
  return left_kernel(factor(f, p, Coord::Log), p.sigma, log_depth(t, p), q);
}

Approx hadamard_right_integral(const Integrand& f, const FracParams& p, double t,
                               const QuadratureSpec& q) {
  p.validate();
  t = checked_time(t, p);
  return right_kernel(factor(f, p, Coord::Log), p.sigma, log_reach(t, p), q);
}

Approx hadamard_right_log_derivative(const Integrand& f, const FracParams& p, double t,
                                     const QuadratureSpec& q) {
  p.validate();
  t = checked_time(t, p);
  const double reach = log_reach(t, p);
  Approx out = right_kernel(log_derivative_factor(f, p), p.sigma, reach, q);
  const double f_end = f.evaluate(p.T, p);
  if (f_end != 0.0) {
    if (reach == 0.0 && p.sigma < 1.0) {
      throw DomainError("t (J_T^sigma f)' is unbounded at t = T when f(T) != 0");
    }
    out.value -= f_end * std::pow(reach, p.sigma - 1.0) / gamma_fn(p.sigma);
  }
  return out;
}

Approx hadamard_caputo_derivative(const Integrand& f, double alpha, const FracParams& p,
                                  double t, const QuadratureSpec& q) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  FracParams pp = p;
  pp.sigma = 1.0 - alpha;
  pp.validate();
  t = checked_time(t, pp);
  return left_kernel(log_derivative_factor(f, pp), pp.sigma, log_depth(t, pp), q);
}

double ConjugatePair::rel_diff() const {
  const double scale = std::max(std::abs(lhs.value), std::abs(rhs.value));
  return scale == 0.0 ? 0.0 : std::abs(lhs.value - rhs.value) / scale;
}

ConjugatePair conjugate_check(const Integrand& f, const FracParams& p, double t,
                              const QuadratureSpec& q, Side side) {
  p.validate();
  check_order(p.sigma);
  t = checked_time(t, p);
  const Factored linear = factor(f, p, Coord::Linear);
  const Factored logf = factor(f, p, Coord::Log);
  ConjugatePair out;
  if (side == Side::Left) {
    out.lhs = hadamard_left_direct(linear, p.sigma, t, p, q);
    out.rhs = left_kernel(logf, p.sigma, log_depth(t, p), q);
  } else {
    out.lhs = hadamard_right_direct(linear, p.sigma, t, p, q);
    out.rhs = right_kernel(logf, p.sigma, log_reach(t, p), q);
  }
  return out;
}

double IbpResult::relative() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? std::abs(residual()) : std::abs(residual()) / scale;
}

IbpResult integration_by_parts(const Integrand& f, const Integrand& g, const FracParams& p,
                               const QuadratureSpec& q) {
  p.validate();
  const Factored ff = factor(f, p, Coord::Log);
  const Factored gg = factor(g, p, Coord::Log);
  const double W = ff.width();
  const double sigma = p.sigma;

  QuadratureSpec outer = q;
  outer.rule = QuadratureRule::AdaptiveGraded;
  outer.rel_tol = std::max(1e3 * q.rel_tol, 1e-10);

  std::vector<double> breaks = offsets_from(ff.lo, 1.0, ff.breaks);
  for (double b : offsets_from(gg.lo, 1.0, gg.breaks)) breaks.push_back(b);

  IbpResult out;
  if (ff.identically_zero || gg.identically_zero) return out;

  // v = ln(t/a) in [0, W]; J_a f ~ v^(sigma + lo_exp_f) near v = 0.
  const double lead = sigma + ff.lo_exp;
  auto lhs_integrand = [&](double v) {
    const double j = left_kernel(ff, sigma, v, q).value;
    return j / std::pow(v, lead) * gg.smooth(v, W - v);
  };
  const QuadResult lhs =
      weighted_integral(lhs_integrand, 0.0, W, lead + gg.lo_exp, gg.hi_exp, outer, breaks);

  // J_T g ~ (W - v)^(sigma + hi_exp_g) near v = W.
  const double tail = sigma + gg.hi_exp;
  auto rhs_integrand = [&](double v) {
    const double reach = W - v;
    const double j = right_kernel(gg, sigma, reach, q).value;
    return ff.smooth(v, reach) * j / std::pow(reach, tail);
  };
  const QuadResult rhs =
      weighted_integral(rhs_integrand, 0.0, W, ff.lo_exp, tail + ff.hi_exp, outer, breaks);

  out.lhs = lhs.value;
  out.rhs = rhs.value;
  out.error = lhs.error + rhs.error;
  return out;
}

double integration_by_parts_residual(const Integrand& f, const Integrand& g,
                                     const FracParams& p, const QuadratureSpec& q) {
  return integration_by_parts(f, g, p, q).residual();
}

}  // namespace hfrac
