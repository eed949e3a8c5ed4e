// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sqz/collision.hpp"
#include "sqz/experiments.hpp"
#include "sqz/ito/identities.hpp"

using namespace sqz;

namespace {

constexpr std::uint64_t kSeed = 20260416;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

CMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

CMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(d, rng);
  return 0.5 * (a + a.adjoint());
}

CMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(d, rng);
  return expm(a - a.adjoint());
}

CVector random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(d);
  for (auto& z : v) z = {g(rng), g(rng)};
  const double nrm = norm2(v);
  for (auto& z : v) z /= nrm;
  return v;
}

Outcome table_reproduction() {
  const auto b = ito::check_identity(ito::squeezed_table_error, 100, 1e-10, kSeed);
  const auto z = ito::check_identity(ito::z_table_error, 100, 1e-10, kSeed);
  return {b.passed && z.passed, fmt("max error squeezed %.2e, Z %.2e over 100 draws", b.max_error, z.max_error)};
}

Outcome qsde_rewrite() {
  const auto r = ito::check_identity(ito::squeezed_qsde_rewrite_error, 100, 1e-10, kSeed);
  return {r.passed, fmt("max coefficient error %.2e over 100 draws", r.max_error)};
}

Outcome generator_identity() {
  const auto sym = ito::check_identity(ito::generator_identity_error, 100, 1e-10, kSeed);
  const auto closed = ito::check_identity(ito::generator_closed_form_error, 100, 1e-10, kSeed);
  std::mt19937_64 rng(kSeed);
  const std::size_t d = 3;
  const SystemModel base = make_system_model(CMatrix::identity(d), random_matrix(d, rng), random_hermitian(d, rng), "base");
  const SqueezeParams p = make_squeeze_params(7.5, 1.1);
  const cplx alpha(0.8, -1.3);
  const CMatrix reference = build_transfer_generator(base, p, alpha).at_identity();
  double s_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const SystemModel m = make_system_model(random_unitary(d, rng), base.L, base.H, "scattered");
    s_err = std::max(s_err, (build_transfer_generator(m, p, alpha).at_identity() - reference).max_abs());
  }
  const bool pass = sym.passed && closed.passed && s_err < 1e-10;
  return {pass, fmt("symbolic error %.2e over 100 draws, ", std::max(sym.max_error, closed.max_error)) +
                    fmt("S-variation %.2e over 20 unitaries", s_err)};
}

Outcome coefficient_invariants() {
  std::mt19937_64 rng(kSeed + 4);
  const auto draws = ito::draw_samples(1000, kSeed + 4);
  double worst = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const std::size_t d = 1 + i % 4;
    const SystemModel m = make_system_model(CMatrix::identity(d), random_matrix(d, rng), CMatrix(d, d), "random");
    const SqueezeParams& p = draws[i].squeeze;
    const Coefficients k = derived_coefficients(m, p);
    worst = std::max(worst, (k.Fnc.adjoint() + k.Fnc).max_abs());
    worst = std::max(worst, (k.Hnc.adjoint() - k.Hnc).max_abs());
    worst = std::max(worst, (k.Lnc - k.Fnc - (1.0 / p.s) * m.L).max_abs());
  }
  return {worst < 1e-12, fmt("max violation %.2e over 1000 models", worst)};
}

Outcome scalar_closed_form() {
  const SystemModel m = scalar_model();
  const SqueezeParams p = make_squeeze_params(1.0, 0.0);
  const StepFunction f = StepFunction::zero(1.0);
  const CVector v{1.0};
  const double exact = 2.0 - 2.0 * std::exp(-(3.0 - 2.0 * std::sqrt(2.0)) / 2.0);
  const double semigroup = error_norm_squared(m, p, f, v);
  CollisionConfig cfg;
  cfg.dt = 1e-3;
  const double c1 = collision_error(m, p, f, v, cfg);
  cfg.dt = 5e-4;
  const double c2 = collision_error(m, p, f, v, cfg);
  const double ratio = (c1 - exact) / (c2 - exact);
  const bool pass = std::abs(semigroup - exact) < 1e-10 && std::abs(c1 - exact) < 5e-3 && ratio >= 1.7 && ratio <= 2.3;
  return {pass, fmt("E = %.10f, semigroup error %.1e, ", exact, std::abs(semigroup - exact)) +
                    fmt("collision error %.2e, Richardson ratio %.3f", std::abs(c1 - exact), ratio)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> un(0.2, 50.0), ut(-3.0, 3.0), ua(-1.5, 1.5), uk(0.3, 2.0);
  CollisionConfig cfg;
  cfg.dt = 1.0 / 8.0;
  cfg.min_steps_per_segment = 1;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const SystemModel m = atom_model(uk(rng), random_hermitian(2, rng));
    const SqueezeParams p = make_squeeze_params(un(rng), ut(rng));
    const StepFunction f({{0.25, cplx(ua(rng), ua(rng))}, {0.5, cplx(ua(rng), ua(rng))}, {0.25, cplx(ua(rng), ua(rng))}});
    const CVector v = random_unit_vector(2, rng);
    worst = std::max(worst, std::abs(brute_force_error(m, p, f, v, cfg) - collision_error(m, p, f, v, cfg)));
  }
  return {worst < 1e-10, fmt("max |brute force - contraction| %.2e over 10 configs, M = 8", worst)};
}

// Collision oracle at dt = 2^-k and 2^-(k+1) with one Richardson step, where
// n dt <= 2^-13 and k >= 15; reproducible with `sqz oracle-compare`.
constexpr std::array<double, 6> kGoldenN = {1, 4, 16, 64, 256, 1024};
constexpr std::array<double, 6> kGoldenTheta0 = {1.167808206159e-01, 3.174578243697e-02, 7.918886227530e-03,
                                                 1.961808761610e-03, 4.888588115330e-04, 1.221061706409e-04};
constexpr std::array<double, 6> kGoldenThetaHalfPi = {2.319075936491e-01, 6.587695540927e-02, 1.685952542295e-02,
                                                      4.247724106638e-03, 1.063832023778e-03, 2.660737902742e-04};

Outcome atom_limit() {
  ModelSpec spec;
  spec.name = "atom";
  spec.kappa = 1.0;
  const StepFunction f({{0.25, cplx(0.5, 0.2)}, {0.5, cplx(-0.3, 0.7)}, {0.25, cplx(0.1, -0.4)}});
  const CVector v{1.0, 0.0};
  const std::vector<double> ns(kGoldenN.begin(), kGoldenN.end());
  bool pass = true;
  double worst_rel = 0.0;
  double worst_drop = 1e300;
  for (double theta : {0.0, std::numbers::pi / 2}) {
    const auto& golden = theta == 0.0 ? kGoldenTheta0 : kGoldenThetaHalfPi;
    const auto r = sweep_n(spec, theta, f, v, ns);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double e = *r.rows[i].E_semigroup;
      worst_rel = std::max(worst_rel, std::abs(e - golden[i]) / golden[i]);
      if (i > 0 && !(e < *r.rows[i - 1].E_semigroup)) pass = false;
    }
    const double drop = *r.rows.front().E_semigroup / *r.rows.back().E_semigroup;
    worst_drop = std::min(worst_drop, drop);
    if (!(drop > 50.0)) pass = false;
  }
  pass = pass && worst_rel < 1e-4;
  return {pass, fmt("strictly decreasing, E(1)/E(1024) >= %.0f, max relative deviation from golden %.1e", worst_drop, worst_rel)};
}

Outcome rate_measurement() {
  ModelSpec spec;
  spec.name = "scalar";
  const auto r = sweep_n(spec, 0.0, StepFunction::zero(1.0), CVector{1.0}, {1e2, 1e3, 1e4, 1e5});
  const double slope = estimate_rate(r).slope;
  return {std::abs(slope + 1.0) <= 0.05, fmt("slope %.4f", slope)};
}

Outcome trotter_kato() {
  ModelSpec spec;
  spec.name = "atom";
  const auto r = tk_check(spec, 0.0, 1.0, 1.0, {10, 100, 1000, 10000}, 101);
  bool pass = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    pass = pass && *r.rows[i].generator_norm_at_I < *r.rows[i - 1].generator_norm_at_I;
    pass = pass && *r.rows[i].sup_deviation < *r.rows[i - 1].sup_deviation;
  }
  const double g_ratio = *r.rows.back().generator_norm_at_I / *r.rows.front().generator_norm_at_I;
  const double s_ratio = *r.rows.back().sup_deviation / *r.rows.front().sup_deviation;
  pass = pass && g_ratio < 0.1 && s_ratio < 0.1;
  return {pass, fmt("monotone; final/initial generator norm %.3f, sup deviation %.3f", g_ratio, s_ratio)};
}

Outcome cavity_example() {
  ModelSpec spec;
  spec.name = "cavity";
  spec.kappa = 0.05;
  spec.omega = 1.0;
  const std::vector<double> ns{1, 10, 100};
  const StepFunction f = StepFunction::zero(1.0);
  std::vector<ConvergenceReport> runs;
  for (std::size_t N : {20u, 25u}) {
    spec.N = N;
    runs.push_back(sweep_n(spec, 0.0, f, default_vector(spec, N + 1), ns));
  }
  bool pass = true;
  double diff = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    diff = std::max(diff, std::abs(*runs[0].rows[i].E_semigroup - *runs[1].rows[i].E_semigroup));
    tail = std::max({tail, *runs[0].rows[i].tail_mass, *runs[1].rows[i].tail_mass});
    if (i > 0 && !(*runs[0].rows[i].E_semigroup < *runs[0].rows[i - 1].E_semigroup)) pass = false;
  }
  pass = pass && diff < 1e-6 && tail < 1e-8;
  return {pass, fmt("kappa = 0.05, t = 1: |E(N=20) - E(N=25)| %.1e, max tail mass %.1e, E decreasing", diff, tail)};
}

Outcome contractivity_and_semigroup_law() {
  std::mt19937_64 rng(kSeed + 11);
  const auto draws = ito::draw_samples(500, kSeed + 11);
  std::uniform_real_distribution<double> ut(0.0, 2.0);
  double contraction_excess = -1e300;
  double law = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const std::size_t d = 1 + i % 3;
    const SystemModel m = make_system_model(i % 2 ? random_unitary(d, rng) : CMatrix::identity(d),
                                            random_matrix(d, rng), random_hermitian(d, rng), "probe");
    const TransferGenerator g = build_transfer_generator(m, draws[i].squeeze, draws[i].alpha);
    CMatrix x = random_matrix(d, rng);
    x *= 1.0 / opnorm(x);
    const double t = ut(rng);
    const double s = ut(rng);
    contraction_excess = std::max(contraction_excess, opnorm(evolve(g, x, t)) - 1.0);
    law = std::max(law, (evolve(g, x, t + s) - evolve(g, evolve(g, x, s), t)).max_abs());
  }
  return {contraction_excess <= 1e-9 && law < 1e-9,
          fmt("max opnorm excess %.1e, max semigroup-law defect %.1e over 500 probes", contraction_excess, law)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"symbolic Ito table reproduction", table_reproduction},
      {"squeezed QSDE rewrite in vacuum noises", qsde_rewrite},
      {"vacuum generator identity at X = I", generator_identity},
      {"coefficient invariants", coefficient_invariants},
      {"scalar closed form", scalar_closed_form},
      {"collision oracle equals brute force", oracle_equivalence},
      {"atom error vanishes with n", atom_limit},
      {"scalar convergence rate", rate_measurement},
      {"Trotter-Kato diagnostic", trotter_kato},
      {"cavity truncation insensitivity", cavity_example},
      {"contractivity and semigroup law", contractivity_and_semigroup_law},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
