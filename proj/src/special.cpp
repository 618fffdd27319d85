#include "hadamard_frac/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hadamard_frac/errors.hpp"

namespace hfrac {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A_g(z), so that Gamma(z + 1) = sqrt(2 pi) t^(z + 1/2) e^(-t) A_g(z)
// with t = z + g + 1/2. Valid for z >= 0 here.
double lanczos_series(double z) {
  double sum = kLanczosCoefficients[0];
  for (std::size_t k = 1; k < kLanczosCoefficients.size(); ++k) {
    sum += kLanczosCoefficients[k] / (z + static_cast<double>(k));
  }
  return sum;
}

void require_positive(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(std::string(name) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

// Gamma(z + 1) for z >= 0.
double gamma_shifted(double z) {
  const double t = z + kLanczosG + 0.5;
  // Split the power so that t^(z + 1/2) e^(-t) does not overflow before Gamma itself does.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
         lanczos_series(z);
}

double log_gamma_shifted(double z) {
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_series(z));
}

}  // namespace

double gamma_fn(double x) {
  require_positive(x, "gamma_fn");
  if (x < 0.5) {
    return gamma_shifted(x) / x;
  }
  return gamma_shifted(x - 1.0);
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x < 0.5) {
    return log_gamma_shifted(x) - std::log(x);
  }
  return log_gamma_shifted(x - 1.0);
}

double gamma_ratio(double x, double y) {
  require_positive(x, "gamma_ratio");
  require_positive(y, "gamma_ratio");
  if (x < 150.0 && y < 150.0) {
    return gamma_fn(x) / gamma_fn(y);
  }
  return std::exp(log_gamma(x) - log_gamma(y));
}

double beta_fn(double x, double y) {
  require_positive(x, "beta_fn");
  require_positive(y, "beta_fn");
  if (x + y < 150.0) {
    return gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y);
  }
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}  // namespace hfrac
