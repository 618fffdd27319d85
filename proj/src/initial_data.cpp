#include "hadamard_frac/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/special.hpp"

namespace hfrac {

std::string to_string(ProfileTag tag) {
  switch (tag) {
    case ProfileTag::InverseWeight:
      return "inverse";
    case ProfileTag::GaussWeight:
      return "gauss";
    case ProfileTag::ExpDecay:
      return "exp";
    case ProfileTag::Custom:
      return "custom";
  }
  return "?";
}

ProfileTag profile_tag_from_string(const std::string& name) {
  if (name == "inverse" || name == "InverseWeight") return ProfileTag::InverseWeight;
  if (name == "gauss" || name == "GaussWeight") return ProfileTag::GaussWeight;
  if (name == "exp" || name == "ExpDecay") return ProfileTag::ExpDecay;
  throw DomainError("unknown profile '" + name + "' (expected inverse, gauss, exp)");
}

std::string to_string(Part part) { return part == Part::Real ? "real" : "imag"; }

double sphere_area(int N) {
  if (N < 1) throw DomainError("dimension N must be >= 1");
  const double half = 0.5 * static_cast<double>(N);
  return 2.0 * std::pow(std::numbers::pi, half) / gamma_fn(half);
}

RadialProfile::RadialProfile(ProfileTag tag, int N, Part part) : tag_(tag), N_(N), part_(part) {
  if (N < 1) throw DomainError("dimension N must be >= 1");
}

RadialProfile RadialProfile::inverse_weight(int N, Part part) {
  return {ProfileTag::InverseWeight, N, part};
}
RadialProfile RadialProfile::gauss_weight(int N, Part part) {
  return {ProfileTag::GaussWeight, N, part};
}
RadialProfile RadialProfile::exp_decay(int N, Part part) { return {ProfileTag::ExpDecay, N, part}; }

RadialProfile RadialProfile::custom(std::vector<double> r, std::vector<double> g, int N,
                                    Part part) {
  if (r.size() != g.size() || r.size() < 2) {
    throw DomainError("custom profile needs at least two (r, g) samples");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(g[i]) || r[i] < 0.0) {
      throw DomainError("custom profile samples must be finite with r >= 0");
    }
    if (i > 0 && !(r[i] > r[i - 1])) throw DomainError("custom profile r must strictly increase");
  }
  RadialProfile rp(ProfileTag::Custom, N, part);
  rp.r_ = std::move(r);
  rp.g_ = std::move(g);
  return rp;
}

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

bool parse_number(const std::string& field, double& out) {
  std::istringstream is(field);
  is >> out;
  return !is.fail() && is.eof();
}

}  // namespace

RadialProfile RadialProfile::from_csv(const std::string& path, int N, Part part) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open profile CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DomainError("profile CSV is empty");
  {
    const auto comma = line.find(',');
    double probe = 0.0;
    if (comma == std::string::npos) throw DomainError("profile CSV header must have two columns");
    if (parse_number(trim(line.substr(0, comma)), probe)) {
      throw DomainError("profile CSV must start with a header row");
    }
  }
  std::vector<double> r;
  std::vector<double> g;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    double rv = 0.0;
    double gv = 0.0;
    if (comma == std::string::npos || !parse_number(trim(line.substr(0, comma)), rv) ||
        !parse_number(trim(line.substr(comma + 1)), gv)) {
      throw DomainError("profile CSV line " + std::to_string(lineno) + ": expected 'r,g'");
    }
    r.push_back(rv);
    g.push_back(gv);
  }
  return custom(std::move(r), std::move(g), N, part);
}

double RadialProfile::tail_exponent() const {
  const std::size_t n = r_.size();
  const double g1 = g_[n - 2];
  const double g2 = g_[n - 1];
  if (g2 == 0.0) return std::numeric_limits<double>::infinity();
  if (g1 == 0.0 || (g1 > 0.0) != (g2 > 0.0) || std::abs(g2) >= std::abs(g1) || r_[n - 2] == 0.0) {
    return 0.0;  // not decaying
  }
  return std::log(g1 / g2) / std::log(r_[n - 1] / r_[n - 2]);
}

double RadialProfile::value(double r) const {
  if (r < 0.0) throw DomainError("radius must be >= 0");
  const double n = static_cast<double>(N_);
  switch (tag_) {
    case ProfileTag::InverseWeight:
      return 1.0 / (std::pow(r, n - 1.0) * (1.0 + r * r));
    case ProfileTag::GaussWeight:
      return std::pow(r, 2.0 - n) * std::exp(-r * r);
    case ProfileTag::ExpDecay:
      return std::exp(-r);
    case ProfileTag::Custom: {
      if (r <= r_.front()) return g_.front();
      if (r >= r_.back()) {
        const double q = tail_exponent();
        if (std::isinf(q)) return 0.0;
        return g_.back() * std::pow(r / r_.back(), -q);
      }
      const auto it = std::upper_bound(r_.begin(), r_.end(), r);
      const std::size_t k = static_cast<std::size_t>(it - r_.begin()) - 1;
      const double w = (r - r_[k]) / (r_[k + 1] - r_[k]);
      return (1.0 - w) * g_[k] + w * g_[k + 1];
    }
  }
  return 0.0;
}

double RadialProfile::radial_density(double r) const {
  const double n = static_cast<double>(N_);
  switch (tag_) {
    case ProfileTag::InverseWeight:
      return 1.0 / (1.0 + r * r);
    case ProfileTag::GaussWeight:
      return r * std::exp(-r * r);
    case ProfileTag::ExpDecay:
      return std::pow(r, n - 1.0) * std::exp(-r);
    case ProfileTag::Custom:
      return value(r) * std::pow(r, n - 1.0);
  }
  return 0.0;
}

std::optional<double> RadialProfile::closed_form_total() const {
  const double omega = sphere_area(N_);
  switch (tag_) {
    case ProfileTag::InverseWeight:
      return omega * std::numbers::pi / 2.0;
    case ProfileTag::GaussWeight:
      return omega / 2.0;
    case ProfileTag::ExpDecay:
      return omega * gamma_fn(static_cast<double>(N_));
    case ProfileTag::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

// Bound on int_R^inf density(r) dr for the named tags.
double tail_bound(const RadialProfile& rp, double R) {
  const double n = static_cast<double>(rp.dimension());
  switch (rp.tag()) {
    case ProfileTag::InverseWeight:
      return std::atan(1.0 / R);
    case ProfileTag::GaussWeight:
      return 0.5 * std::exp(-R * R);
    case ProfileTag::ExpDecay:
      // r^(N-1) e^(-r/2) decreases for r > 2(N-1)
      if (R < 2.0 * (n - 1.0)) return std::numeric_limits<double>::infinity();
      return 2.0 * std::pow(R, n - 1.0) * std::exp(-R);
    case ProfileTag::Custom:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

QuadratureSpec adaptive_spec(const QuadratureSpec& q) {
  QuadratureSpec s = q;
  s.rule = QuadratureRule::AdaptiveGraded;
  return s;
}

// int_lo^hi density(r) weight(r) dr with the profile's sample radii as breakpoints.
QuadResult radial_piece(const RadialProfile& rp, double lo, double hi,
                        const std::function<double(double)>& weight, const QuadratureSpec& q) {
  std::vector<double> breaks;
  for (double r : rp.sample_radii()) {
    if (r > lo && r < hi) breaks.push_back(r);
  }
  auto integrand = [&](double r) { return rp.radial_density(r) * weight(r); };
  return weighted_integral(integrand, lo, hi, 0.0, 0.0, adaptive_spec(q), breaks);
}

}  // namespace

RadialIntegral total_integral(const RadialProfile& rp, const QuadratureSpec& q) {
  q.validate();
  const double omega = sphere_area(rp.dimension());
  const auto unit = [](double) { return 1.0; };
  RadialIntegral out;
  out.closed_form = rp.closed_form_total();

  if (rp.tag() == ProfileTag::Custom) {
    const auto& radii = rp.sample_radii();
    const double r_last = radii.back();
    QuadResult body = radial_piece(rp, 0.0, r_last, unit, q);
    const double g_last = rp.value(r_last);
    double tail = 0.0;
    if (g_last != 0.0) {
      const double n = static_cast<double>(rp.dimension());
      const double q_exp = std::log(rp.value(radii[radii.size() - 2]) / g_last) /
                           std::log(r_last / radii[radii.size() - 2]);
      if (!(q_exp > n) || !std::isfinite(q_exp)) {
        throw DivergentIntegral(
            "custom profile tail does not decay faster than r^-N; integral diverges");
      }
      tail = g_last * std::pow(r_last, n) / (q_exp - n);
    }
    out.value = omega * (body.value + tail);
    out.error = omega * body.error;
    out.r_max = g_last == 0.0 ? r_last : std::numeric_limits<double>::infinity();
    return out;
  }

  double acc = 0.0;
  double err = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0; k < 80; ++k) {
    const QuadResult piece = radial_piece(rp, lo, hi, unit, q);
    acc += piece.value;
    err += piece.error;
    if (tail_bound(rp, hi) < 0.1 * q.rel_tol * std::abs(acc)) {
      out.value = omega * acc;
      out.error = omega * (err + tail_bound(rp, hi));
      out.r_max = hi;
      return out;
    }
    lo = hi;
    hi *= 2.0;
  }
  throw DivergentIntegral("radial tail bound never fell below tolerance");
}

Approx cutoff_weighted_integral(const RadialProfile& rp, const CutoffParams& c,
                                const QuadratureSpec& q) {
  c.validate();
  q.validate();
  if (c.N != rp.dimension()) throw DomainError("cutoff and profile dimensions differ");
  const double omega = sphere_area(rp.dimension());
  const auto unit = [](double) { return 1.0; };

  double value = 0.0;
  double error = 0.0;
  // Plateau |x| <= R, split geometrically so slow radial decay is resolved.
  double lo = 0.0;
  double hi = std::min(1.0, c.R);
  while (lo < c.R) {
    const QuadResult piece = radial_piece(rp, lo, hi, unit, q);
    value += piece.value;
    error += piece.error;
    lo = hi;
    hi = std::min(2.0 * hi, c.R);
  }
  const double ell = static_cast<double>(c.ell);
  const auto ramp = [&](double r) { return std::pow(cutoff_profile(r / c.R).value, ell); };
  const QuadResult annulus = radial_piece(rp, c.R, 2.0 * c.R, ramp, q);
  value += annulus.value;
  error += annulus.error;
  return {omega * value, omega * error};
}

std::pair<double, double> InitialValue::integrals(const QuadratureSpec& q) const {
  return {real ? total_integral(*real, q).value : 0.0, imag ? total_integral(*imag, q).value : 0.0};
}

std::pair<double, double> InitialValue::cutoff_integrals(const CutoffParams& c,
                                                         const QuadratureSpec& q) const {
  return {real ? cutoff_weighted_integral(*real, c, q).value : 0.0,
          imag ? cutoff_weighted_integral(*imag, c, q).value : 0.0};
}

InitialValue make_initial_value(const RadialProfile& profile) {
  InitialValue f;
  if (profile.part() == Part::Real) {
    f.real = profile;
  } else {
    f.imag = profile;
  }
  return f;
}

SignFunctionals sign_functionals(const ProblemParams& pp, const InitialValue& f,
                                 const QuadratureSpec& q) {
  for (const auto* rp : {&f.real, &f.imag}) {
    if (*rp && (*rp)->dimension() != pp.N) {
      throw DomainError("initial-data dimension differs from N");
    }
  }
  const auto [i1, i2] = f.integrals(q);
  return sign_functionals(pp, i1, i2);
}

}  // namespace hfrac
