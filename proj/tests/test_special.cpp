#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/special.hpp"

using namespace hfrac;

TEST_CASE("gamma at known points") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055159).epsilon(1e-14));
  CHECK(gamma_fn(3.5) == doctest::Approx(3.3233509704478426).epsilon(1e-14));
}

TEST_CASE("gamma agrees with std::tgamma") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1e-3, 150.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma recurrence") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    CHECK(std::abs(gamma_fn(x + 1.0) - x * gamma_fn(x)) <= 1e-12 * gamma_fn(x + 1.0));
  }
}

TEST_CASE("beta values and identity") {
  CHECK(beta_fn(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beta_fn(0.5, 3.0) == doctest::Approx(16.0 / 15.0).epsilon(1e-13));
  CHECK(beta_fn(2.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(beta_fn(x, y) * gamma_fn(x + y) ==
          doctest::Approx(gamma_fn(x) * gamma_fn(y)).epsilon(1e-12));
  }
}

TEST_CASE("gamma ratio survives large arguments") {
  CHECK(gamma_ratio(200.5, 200.0) == doctest::Approx(std::exp(std::lgamma(200.5) - std::lgamma(200.0))).epsilon(1e-11));
  CHECK(gamma_ratio(5.0, 4.5) == doctest::Approx(24.0 / std::tgamma(4.5)).epsilon(1e-13));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
  CHECK_THROWS_AS(gamma_fn(std::nan("")), DomainError);
  CHECK_THROWS_AS(beta_fn(1.0, 0.0), DomainError);
}
