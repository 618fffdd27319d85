#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hadamard_frac/criterion.hpp"
#include "hadamard_frac/errors.hpp"

using namespace hfrac;

namespace {

ProblemParams params(double alpha, double gamma, int N, double p, double l1 = 1.0,
                     double l2 = 0.0) {
  return {alpha, gamma, N, p, l1, l2, 1.0};
}

bool has_failed(const CriterionReport& r, const std::string& name) {
  const auto f = r.failed();
  return std::find(f.begin(), f.end(), name) != f.end();
}

}  // namespace

TEST_CASE("duality coefficients") {
  const auto d = duality_coefficients(0.5);
  CHECK(d.r_alpha == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(d.s_alpha == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  const auto tiny = duality_coefficients(1e-9);
  CHECK(tiny.r_alpha == doctest::Approx(1.0));
  CHECK(tiny.s_alpha == doctest::Approx(0.0));
  double last_s = 0.0;
  for (int k = 1; k < 100; ++k) {
    const auto dk = duality_coefficients(k / 100.0);
    CHECK(dk.r_alpha * dk.r_alpha + dk.s_alpha * dk.s_alpha == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dk.r_alpha > 0.0);
    CHECK(dk.r_alpha < 1.0);
    CHECK(dk.s_alpha > last_s);
    last_s = dk.s_alpha;
  }
  CHECK_THROWS_AS(duality_coefficients(1.0), DomainError);
}

TEST_CASE("region T1") {
  const auto r1 = region_T1(0.5, -0.25, 5);
  CHECK(r1.admissible);
  CHECK(r1.p_lower == 1.0);
  CHECK(r1.p_upper == doctest::Approx(1.2).epsilon(1e-15));
  const auto r2 = region_T1(0.5, 0.5, 2);
  CHECK(r2.admissible);
  CHECK(r2.p_lower == 1.5);
  CHECK(r2.p_upper == 3.0);
  const auto r3 = region_T1(0.7, 0.0, 4);
  CHECK(r3.p_lower == 1.0);
  CHECK(r3.p_upper == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_FALSE(region_T1(0.5, -0.6, 3).admissible);
}

TEST_CASE("region T2") {
  const auto r = region_T2(0.5, 1.0);
  CHECK(r.admissible);
  CHECK(r.p_lower == 2.0);
  CHECK(r.p_upper == 3.0);
  const auto h = region_T2(0.5, 0.5);
  CHECK(h.p_lower == 1.5);
  CHECK(h.p_upper == 2.0);
  CHECK_FALSE(region_T2(0.5, 0.0).admissible);
  CHECK_FALSE(region_T2(0.5, -1.0).admissible);
}

TEST_CASE("combined region and branches") {
  const auto a = region_combined(0.5, 0.5, 2);
  CHECK(a.region.p_upper == 3.0);
  CHECK(a.active_branch == Branch::T1);
  const auto b = region_combined(0.5, 1.0, 4);
  CHECK(b.p_upper_T1 == 2.5);
  CHECK(b.p_upper_T2 == 3.0);
  CHECK(b.region.p_upper == 3.0);
  CHECK(b.active_branch == Branch::T2);
  const auto c = region_combined(0.5, 1.0, 3);
  CHECK(c.p_upper_T1 == 3.0);
  CHECK(c.p_upper_T2 == 3.0);
  CHECK(c.active_branch == Branch::Tie);
}

TEST_CASE("sign functionals") {
  const auto s = sign_functionals(params(0.5, 0.0, 1, 2.0), 2.0, 0.0);
  CHECK(s.I1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.I2 == 0.0);
  const auto t = sign_functionals(params(0.5, 0.0, 1, 2.0, -1.0), 0.0, 3.0);
  CHECK(t.I1 == doctest::Approx(3.0 * std::sqrt(2.0) / 2.0).epsilon(1e-15));
  const auto z = sign_functionals(params(0.5, 0.0, 1, 2.0, 1.0, 1.0), 0.0, 0.0);
  CHECK_FALSE(z.any_positive());
  CHECK_THROWS_AS(sign_functionals(params(0.5, 0.0, 1, 2.0), INFINITY, 0.0), DomainError);
}

TEST_CASE("verdicts for the worked examples") {
  const SignFunctionals pos{1.0, 0.0};
  CHECK(evaluate(params(0.5, -0.25, 5, 1.1), pos).verdict == Verdict::NonexistenceT1);
  const auto ex3 = evaluate(params(0.5, 1.0, 3, 2.5), pos);
  CHECK(ex3.verdict == Verdict::NonexistenceCorollary);
  const auto out = evaluate(params(0.5, -0.25, 5, 5.0), pos);
  CHECK(out.verdict == Verdict::Inconclusive);
  CHECK(has_failed(out, "p < p_upper_T1"));
  const auto neg = evaluate(params(0.5, -0.6, 3, 1.1), pos);
  CHECK(neg.verdict == Verdict::Inconclusive);
  CHECK(has_failed(neg, "gamma > -alpha"));
  CHECK(neg.note.find("makes no claim") != std::string::npos);
}

TEST_CASE("open interval endpoints are inconclusive") {
  const SignFunctionals pos{1.0, 0.0};
  CHECK(evaluate(params(0.5, -0.25, 5, 1.0 + 1e-12), pos).verdict == Verdict::NonexistenceT1);
  CHECK(evaluate(params(0.5, -0.25, 5, 1.2), pos).verdict == Verdict::Inconclusive);
  CHECK(evaluate(params(0.5, 0.5, 2, 1.5), pos).verdict == Verdict::Inconclusive);
  CHECK(evaluate(params(0.5, 0.5, 2, 3.0), pos).verdict == Verdict::Inconclusive);
}

TEST_CASE("report carries margins and comparison exponents") {
  const auto r = evaluate(params(0.5, 0.0, 3, 1.5), SignFunctionals{1.0, 0.0});
  CHECK(r.comparison_exponents.fujita == doctest::Approx(1.0 + 2.0 / 3.0));
  REQUIRE(r.comparison_exponents.kirane_nabti.has_value());
  CHECK(*r.comparison_exponents.kirane_nabti == doctest::Approx(1.0 + 3.0 / 2.0));
  for (const auto& c : r.conditions) {
    if (c.margin) CHECK((*c.margin > 0.0) == c.holds);
  }
  const auto small = evaluate(params(0.9, 0.0, 1, 1.5), SignFunctionals{1.0, 0.0});
  CHECK_FALSE(small.comparison_exponents.kirane_nabti.has_value());
}

TEST_CASE("verdict monotone in evidence") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(0.05, 0.95);
  std::uniform_real_distribution<double> ug(-1.0, 2.0);
  std::uniform_int_distribution<int> un(1, 8);
  std::uniform_real_distribution<double> up(1.01, 4.0);
  for (int i = 0; i < 2000; ++i) {
    const auto pp = params(ua(rng), ug(rng), un(rng), up(rng));
    const auto without = evaluate(pp, SignFunctionals{-1.0, 0.0});
    const auto with = evaluate(pp, SignFunctionals{1.0, 0.0});
    CHECK(without.verdict == Verdict::Inconclusive);
    if (without.verdict != Verdict::Inconclusive) CHECK(with.verdict != Verdict::Inconclusive);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(params(0.0, 0.0, 1, 2.0).validate(), DomainError);
  CHECK_THROWS_AS(params(0.5, 0.0, 0, 2.0).validate(), DomainError);
  CHECK_THROWS_AS(params(0.5, 0.0, 1, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(params(0.5, 0.0, 1, 2.0, 0.0, 0.0).validate(), DomainError);
}
