#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "hadamard_frac/errors.hpp"
#include "hadamard_frac/estimate_probe.hpp"
#include "hadamard_frac/special.hpp"

using namespace hfrac;

namespace {

ProbeConfig base_config() {
  ProbeConfig cfg;
  cfg.pp = ProblemParams{0.5, 0.0, 1, 2.0, 1.0, 0.0, 1.0};
  return cfg;
}

InitialValue exp_data(int N) { return make_initial_value(RadialProfile::exp_decay(N)); }

}  // namespace

TEST_CASE("K11 at ln(T/a) = 1") {
  ProbeConfig cfg = base_config();
  cfg.kappa = 4.0;
  const auto k1 = k1_terms(cfg, 1.0, 1.0);
  CHECK(k1.K11_bound == doctest::Approx(std::pow(24.0 / std::tgamma(4.5), 2.0)).epsilon(1e-13));
  // exact: C^2 int_0^1 (1-y)^(kappa-1) dy = C^2 / kappa
  CHECK(k1.K11_quad == doctest::Approx(k1.K11_bound / 4.0).epsilon(1e-11));
  CHECK(k1.K11_quad <= k1.K11_bound);
}

TEST_CASE("K11 quadrature against a Beta-function oracle") {
  ProbeConfig cfg = base_config();
  cfg.pp.gamma = 0.4;
  cfg.pp.p = 2.5;
  cfg.pp.N = 2;
  cfg.kappa = 3.5;
  const double L = 7.0;
  const auto k1 = k1_terms(cfg, 2.0, L);
  const double pc = 2.5 / 1.5;
  const double g = 0.4 / 1.5;
  const double c = std::pow(std::tgamma(4.5) / std::tgamma(4.0), pc);
  const double ex = 3.5 - 0.5 * pc;
  const double oracle = c * std::pow(L, 1.0 - g - 0.5 * pc) * beta_fn(1.0 - g, ex + 1.0);
  CHECK(k1.K11_quad == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(k1.K11_quad <= k1.K11_bound);
}

TEST_CASE("K11 bound scaling in ln(T/a)") {
  ProbeConfig cfg = base_config();
  cfg.pp.gamma = 0.3;
  cfg.pp.p = 2.0;
  const double a = k1_terms(cfg, 1.0, 3.0).K11_bound;
  const double b = k1_terms(cfg, 1.0, 6.0).K11_bound;
  CHECK(b / a == doctest::Approx(std::pow(2.0, 1.0 - (0.3 + 1.0) / 1.0)).epsilon(1e-13));
}

TEST_CASE("K12 against ball volume and K21 bounds") {
  ProbeConfig cfg = base_config();
  for (int N : {1, 2, 3}) {
    cfg.pp.N = N;
    const double R = 5.0;
    const auto k1 = k1_terms(cfg, R, 2.0);
    const double vol = sphere_area(N) * std::pow(2.0 * R, N) / N;
    CHECK(k1.K12 <= vol);
    CHECK(k1.K12 >= sphere_area(N) * std::pow(R, N) / N);
  }
  cfg.pp.N = 1;
  const auto k2 = k2_terms(cfg, 3.0, 5.0);
  CHECK(k2.K21_bound == doctest::Approx(5.0));
  CHECK(k2.K21_quad == doctest::Approx(5.0 / 4.0).epsilon(1e-12));
  CHECK(k2.K21_quad <= k2.K21_bound);
  CHECK(k2.K22 <= k2.K22_bound);
}

TEST_CASE("K22 scaling with R") {
  ProbeConfig cfg = base_config();
  for (int N : {1, 3}) {
    cfg.pp.N = N;
    const double a = k2_terms(cfg, 10.0, 1.0).K22;
    const double b = k2_terms(cfg, 20.0, 1.0).K22;
    const double expect = std::pow(2.0, N - 2.0 * 2.0);
    CHECK(b / a == doctest::Approx(expect).epsilon(0.05));
  }
}

TEST_CASE("regime guards") {
  ProbeConfig cfg = base_config();
  cfg.kappa = 1.0;
  CHECK_THROWS_AS(cfg.validate(), RegimeError);
  cfg.kappa = 0.0;
  cfg.ell = 4;
  CHECK_THROWS_AS(cfg.validate(), RegimeError);
  cfg.ell = 0;
  cfg.pp.gamma = 1.0;
  CHECK_THROWS_AS(cfg.validate(), RegimeError);
  cfg.pp.gamma = 0.0;
  cfg.R_grid = {20.0, 10.0};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.R_grid = {10.0};
  CHECK_THROWS_AS(master_inequality(cfg, InitialValue::zero(), 10.0), RegimeError);
}

TEST_CASE("exponent algebra") {
  const ProblemParams pp{0.5, 0.0, 1, 2.0, 1.0, 0.0, 1.0};
  CHECK(decay_exponent(pp) == doctest::Approx(-1.0).epsilon(1e-15));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.05, 0.95);
  std::uniform_real_distribution<double> ug(-0.9, 2.0);
  std::uniform_int_distribution<int> un(1, 8);
  std::uniform_real_distribution<double> up(1.01, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const ProblemParams q{ua(rng), ug(rng), un(rng), up(rng), 1.0, 0.0, 1.0};
    const RExponents e = r_exponents(q, 2.0 / q.alpha);
    const double d = decay_exponent(q);
    CHECK(e.first == doctest::Approx(d).epsilon(1e-12));
    CHECK(e.second == doctest::Approx(d).epsilon(1e-12));
    if (q.p > std::max(1.0, 1.0 + q.gamma)) {
      const double upper = 1.0 + 2.0 * (q.alpha + q.gamma) / (q.N * q.alpha);
      CHECK((d < 0.0) == (q.p < upper));
    }
  }
}

TEST_CASE("sweep reproduces the decay exponent") {
  const ProbeConfig cfg = base_config();
  const SweepResult s = sweep(cfg, exp_data(1));
  REQUIRE(s.rows.size() == 4);
  CHECK(s.slope == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(s.exponents_equal);
  CHECK(s.contradiction_regime);
  for (const auto& row : s.rows) {
    CHECK(row.k11_ok(1e-9));
    CHECK(row.k21_ok(1e-9));
    CHECK(row.k22_ok(1e-9));
  }
  CHECK(s.rows[0].R < s.rows[3].R);
  // lhs tends to the full functional r_alpha * 2
  CHECK(s.rows.back().lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("theta override and out-of-region p") {
  ProbeConfig cfg = base_config();
  cfg.theta = 1.0;
  cfg.R_grid = {10.0, 20.0};
  const SweepResult s = sweep(cfg, exp_data(1));
  CHECK_FALSE(s.exponents_equal);
  CHECK(s.exponents.first != s.exponents.second);

  ProbeConfig out = base_config();
  out.pp.p = 4.0;  // beyond 1 + 2/N... with N = 1 upper is 3
  out.R_grid = {10.0, 20.0, 40.0};
  const SweepResult so = sweep(out, exp_data(1));
  CHECK(so.decay_exponent > 0.0);
  CHECK_FALSE(so.contradiction_regime);
  CHECK(so.rows[2].rhs_bound > so.rows[0].rhs_bound);
}

TEST_CASE("Young inequality constant") {
  for (double p : {1.3, 2.0, 3.5}) {
    for (double eps : {0.1, 0.5, 2.0}) {
      CHECK(young_check(eps, p, 2000) <= 1e-12);
      // equality at the optimizing pair
      const double y = 1.7;
      const double x = std::pow(y / (eps * p), 1.0 / (p - 1.0));
      const double rhs = eps * std::pow(x, p) + young_constant(eps, p) * std::pow(y, p / (p - 1.0));
      CHECK(x * y == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("weak residuals") {
  ProbeConfig cfg = base_config();
  const auto zero = SampledComplexField::zeros(1.0, 1.0, 2.0, 1, 65, 129);
  const WeakResiduals r0 = weak_residuals(zero, cfg, InitialValue::zero());
  CHECK(r0.res1 == 0.0);
  CHECK(r0.res2 == 0.0);

  const WeakResiduals rf = weak_residuals(zero, cfg, exp_data(1));
  const double kappa = cfg.resolved_kappa();
  const double factor = std::tgamma(kappa + 1.0) / std::tgamma(kappa + 1.5);
  const int ell = cfg.resolved_ell();
  const double ramp = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double r) {
        return std::exp(-r) * std::pow(cutoff_eval(CutoffParams{2.0, ell, 1}, r), ell);
      },
      2.0, 4.0, 15, 1e-14);
  const double cut = 2.0 * (1.0 - std::exp(-2.0) + ramp);
  CHECK(rf.res1 == doctest::Approx(factor * std::sqrt(0.5) * cut).epsilon(1e-9));
  CHECK(rf.res1 > 0.0);

  // u-dependent terms scale linearly (Laplacian, time) and with |.|^p (nonlinear)
  const auto u = SampledComplexField::sample(1.0, 1.0, 2.0, 1, 33, 65, [](double y, double r) {
    return std::complex<double>(std::exp(-r * r) * (1.0 + y), 0.3 * std::exp(-r));
  });
  auto u2 = u;
  for (auto& v : u2.u1) v *= 2.0;
  for (auto& v : u2.u2) v *= 2.0;
  const WeakResiduals a = weak_residuals(u, cfg, exp_data(1));
  const WeakResiduals b = weak_residuals(u2, cfg, exp_data(1));
  CHECK(b.laplacian1 == doctest::Approx(2.0 * a.laplacian1).epsilon(1e-12));
  CHECK(b.time1 == doctest::Approx(2.0 * a.time1).epsilon(1e-12));
  CHECK(b.nonlinear == doctest::Approx(4.0 * a.nonlinear).epsilon(1e-12));
  CHECK(b.initial1 == a.initial1);

  const auto mismatch = SampledComplexField::zeros(1.0, 1.0, 2.0, 2, 9, 9);
  CHECK_THROWS_AS(weak_residuals(mismatch, cfg, InitialValue::zero()), DomainError);
}

TEST_CASE("weak residual time weights integrate the closed forms") {
  // For u1 = 1 everywhere the time term equals int_0^L t(J mu)' dy * int xi^ell dx
  // = -(J_T mu)(a) * K12, and the Laplacian term vanishes.
  ProbeConfig cfg = base_config();
  const auto one = SampledComplexField::sample(1.0, 2.0, 3.0, 1, 17, 33,
                                               [](double, double) { return std::complex<double>(1.0, 0.0); });
  const WeakResiduals w = weak_residuals(one, cfg, InitialValue::zero());
  const double kappa = cfg.resolved_kappa();
  const MuParams m = MuParams::from_log_span(1.0, 2.0, kappa);
  const double image_at_a = mu_right_image_log(m, 0.5, 0.0);
  const double k12 = k1_terms(cfg, 3.0, 2.0).K12;
  const double r_alpha = std::sqrt(0.5);
  CHECK(w.time1 == doctest::Approx(-r_alpha * image_at_a * k12).epsilon(1e-10));
  CHECK(std::abs(w.laplacian1) < 1e-10);
}
