// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqz/experiments.hpp"

using namespace sqz;

namespace {

ModelSpec named(const std::string& name) {
  ModelSpec s;
  s.name = name;
  return s;
}

}  // namespace

TEST_CASE("model construction from specs") {
  CHECK(build_model(named("atom")).d == 2);
  ModelSpec cav = named("cavity");
  cav.N = 7;
  CHECK(build_model(cav).d == 8);
  CHECK(build_model(named("scalar")).d == 1);
  CHECK_THROWS_AS(build_model(named("laser")), std::invalid_argument);
  CHECK_THROWS_AS(build_model(named("custom")), std::invalid_argument);
  ModelSpec custom = named("custom");
  custom.L = CMatrix(3, 3);
  CHECK(build_model(custom).d == 3);
  ModelSpec zero = named("atom");
  zero.zero_L = true;
  CHECK(build_model(zero).L.max_abs() == 0.0);
}

TEST_CASE("default reference vectors") {
  CHECK(default_vector(named("atom"), 2) == CVector{1.0, 0.0});
  CHECK(default_vector(named("cavity"), 4) == CVector{0.0, 1.0, 0.0, 0.0});
  CHECK(default_vector(named("scalar"), 1) == CVector{1.0});
}

TEST_CASE("atom sweep is strictly decreasing") {
  const auto r = sweep_n(named("atom"), 0.0, StepFunction::zero(1.0), CVector{1.0, 0.0}, {1, 4, 16, 64, 256});
  REQUIRE(r.rows.size() == 5);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].n > r.rows[i - 1].n);
    CHECK(*r.rows[i].E_semigroup < *r.rows[i - 1].E_semigroup);
  }
  CHECK(r.fit.has_value());
  CHECK_FALSE(r.rows[0].E_collision.has_value());
}

TEST_CASE("sweep preconditions") {
  const CVector v{1.0, 0.0};
  CHECK_THROWS_AS(sweep_n(named("atom"), 0.0, StepFunction::zero(1.0), v, {4}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_n(named("atom"), 0.0, StepFunction::zero(1.0), v, {4, 4}), std::invalid_argument);
  const auto r = sweep_n(named("atom"), 0.0, StepFunction::zero(1.0), v, {1, 2, 3});
  CHECK_FALSE(r.fit.has_value());
}

TEST_CASE("zero coupling gives an all-zero column") {
  ModelSpec s = named("atom");
  s.zero_L = true;
  const auto r = sweep_n(s, 0.3, StepFunction({{0.5, 1.0}, {0.5, cplx(0, 2)}}), CVector{1.0, 0.0}, {1, 10, 100, 1000});
  for (const auto& row : r.rows) CHECK(std::abs(*row.E_semigroup) < 1e-14);
  CHECK_FALSE(r.fit.has_value());
}

TEST_CASE("scalar sweep reproduces the closed form") {
  const auto r = sweep_n(named("scalar"), 0.0, StepFunction::zero(1.5), CVector{1.0}, {0.5, 2, 8, 32});
  for (const auto& row : r.rows) {
    CHECK(std::abs(*row.E_semigroup - (2.0 - 2.0 * std::exp(-1.5 / (2.0 * row.s2)))) < 1e-10);
  }
}

TEST_CASE("rows are identical for any thread count") {
  SweepOptions one;
  one.threads = 1;
  SweepOptions many;
  many.threads = 4;
  const std::vector<double> ns{1, 2, 4, 8, 16, 32};
  const auto a = sweep_n(named("atom"), 1.0, StepFunction::zero(1.0), CVector{1.0, 0.0}, ns, one);
  const auto b = sweep_n(named("atom"), 1.0, StepFunction::zero(1.0), CVector{1.0, 0.0}, ns, many);
  for (std::size_t i = 0; i < ns.size(); ++i) CHECK(*a.rows[i].E_semigroup == *b.rows[i].E_semigroup);
}

TEST_CASE("rate estimate") {
  ConvergenceReport synthetic;
  for (double n : {1.0, 10.0, 100.0, 1000.0, 1e4, 1e5}) {
    ReportRow row;
    row.n = n;
    row.E_semigroup = 7.0 / n;
    synthetic.rows.push_back(row);
  }
  const RateFit fit = estimate_rate(synthetic);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(7.0).epsilon(1e-10));

  synthetic.rows.back().E_semigroup = 0.0;
  CHECK_THROWS_AS(estimate_rate(synthetic), std::domain_error);
  synthetic.rows.resize(3);
  CHECK_THROWS_AS(estimate_rate(synthetic), std::invalid_argument);

  const auto r = sweep_n(named("scalar"), 0.0, StepFunction::zero(1.0), CVector{1.0}, {1e2, 1e3, 1e4, 1e5});
  CHECK(std::abs(estimate_rate(r).slope + 1.0) < 0.05);
}

TEST_CASE("theta scan") {
  const std::vector<double> grid{-2.5, -1.0, 0.0, 1.0, 2.5};
  const auto r = theta_scan(named("scalar"), 2.0, grid, StepFunction::zero(1.0), CVector{1.0});
  REQUIRE(r.rows.size() == 5);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expected = 2 * 2.0 + 1 + 2 * std::sqrt(6.0) * std::cos(grid[i]);
    CHECK(std::abs(r.rows[i].s2 - expected) < 1e-12);
    CHECK(r.rows[i].s2 <= r.rows[2].s2);
  }
  CHECK(std::abs(*r.rows[0].E_semigroup - *r.rows[4].E_semigroup) < 1e-10);
  CHECK(std::abs(*r.rows[1].E_semigroup - *r.rows[3].E_semigroup) < 1e-10);
  CHECK(*r.rows[0].E_semigroup > *r.rows[2].E_semigroup);
  CHECK_THROWS_AS(theta_scan(named("scalar"), 2.0, {0.0, std::numbers::pi - 0.01}, StepFunction::zero(1.0), CVector{1.0}),
                  std::invalid_argument);
}

TEST_CASE("Trotter-Kato check") {
  ModelSpec zero = named("atom");
  zero.zero_L = true;
  for (const auto& row : tk_check(zero, 0.0, 1.0, 1.0, {10, 100}, 11).rows) {
    CHECK(*row.generator_norm_at_I == 0.0);
    CHECK(*row.sup_deviation == 0.0);
  }
  for (const auto& row : tk_check(named("scalar"), 0.0, 0.0, 1.0, {1, 10, 100}, 11).rows) {
    CHECK(*row.generator_norm_at_I == doctest::Approx(1.0 / (2.0 * row.s2)).epsilon(1e-12));
  }
  const auto r = tk_check(named("atom"), 0.0, 1.0, 1.0, {10, 100, 1000}, 21);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(*r.rows[i].generator_norm_at_I < *r.rows[i - 1].generator_norm_at_I);
    CHECK(*r.rows[i].sup_deviation < *r.rows[i - 1].sup_deviation);
    // the alpha term dominates and scales as 1/s ~ 1/sqrt(n)
    CHECK(*r.rows[i - 1].generator_norm_at_I / *r.rows[i].generator_norm_at_I ==
          doctest::Approx(std::sqrt(10.0)).epsilon(0.05));
  }
}

TEST_CASE("cavity runs record tail mass") {
  ModelSpec cav = named("cavity");
  cav.kappa = 0.05;
  cav.N = 8;
  CVector v(9);
  v[1] = 1.0;
  const auto r = sweep_n(cav, 0.0, StepFunction::zero(1.0), v, {1, 10});
  for (const auto& row : r.rows) {
    REQUIRE(row.tail_mass.has_value());
    CHECK(*row.tail_mass >= 0.0);
    CHECK(*row.tail_mass < 1e-6);
  }
  CHECK(r.warnings.empty());
  ModelSpec hot = cav;
  hot.kappa = 1.0;
  hot.N = 3;
  CVector w(4);
  w[1] = 1.0;
  CHECK_FALSE(sweep_n(hot, 0.0, StepFunction::zero(1.0), w, {10, 100}).warnings.empty());
}

TEST_CASE("oracle comparison halves the discrepancy") {
  const auto cmp = oracle_compare(named("atom"), 0.0, StepFunction({{0.5, cplx(0.3, 0.1)}, {0.5, -0.2}}), CVector{1.0, 0.0},
                                  {1, 4}, 1e-3);
  REQUIRE(cmp.ratios.size() == 2);
  CHECK(cmp.report.rows.size() == 4);
  for (double ratio : cmp.ratios) {
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
  }
  for (double d : cmp.max_abs_diff) CHECK(d < 5e-3);
}
