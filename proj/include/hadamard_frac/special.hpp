#pragma once

namespace hfrac {

/// Gamma function for x > 0 (Lanczos, g = 7). Throws DomainError otherwise.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(x) / Gamma(y), evaluated in log space when either factor would overflow.
double gamma_ratio(double x, double y);

/// Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).
double beta_fn(double x, double y);

}  // namespace hfrac
