// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqz/collision.hpp"
#include "sqz/model.hpp"
#include "sqz/semigroup.hpp"

namespace sqz {

/// Named model plus its parameters. "custom" takes S, L, H verbatim; for the
/// named models an explicit H replaces the default Hamiltonian.
struct ModelSpec {
  std::string name = "atom";  // atom | cavity | scalar | custom
  double kappa = 1.0;
  double omega = 1.0;  // cavity frequency
  std::size_t N = 10;  // cavity truncation level
  cplx scalar_L = 1.0;
  std::optional<CMatrix> S;
  std::optional<CMatrix> L;
  std::optional<CMatrix> H;
  bool zero_L = false;  // replace L by 0, making both evolutions identical
};

SystemModel build_model(const ModelSpec& spec);

/// Excited state for the atom, Fock level 1 for the cavity, 1 for the scalar
/// system, first basis vector otherwise.
CVector default_vector(const ModelSpec& spec, std::size_t d);

inline constexpr double kTailMassWarning = 1e-6;

/// Largest top-level population reached by either evolution at the final
/// time, <v, T(P_top) v> with T the Heisenberg evolution under U (resp. V).
double tail_mass(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                 std::span<const cplx> v);

struct ReportRow {
  double n = 0.0;
  double theta = 0.0;
  double t = 0.0;
  double s2 = 0.0;
  std::optional<double> dt;
  std::optional<double> E_semigroup;
  std::optional<double> E_collision;
  std::optional<double> sup_deviation;
  std::optional<double> generator_norm_at_I;
  std::optional<double> tail_mass;
  std::optional<double> wall_ms;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
};

struct ConvergenceReport {
  std::string config;
  std::vector<ReportRow> rows;
  std::optional<RateFit> fit;
  std::vector<std::string> warnings;
};

struct SweepOptions {
  std::optional<double> collision_dt;
  std::size_t collision_min_steps = 10;
  std::optional<std::size_t> sup_grid;  // adds sup_deviation with horizon t
  bool generator_norm = false;
  cplx diagnostic_alpha = 0.0;  // amplitude used for the two diagnostic columns
  bool record_tail_mass = false;  // always on for cavity models
  bool timing = false;
  unsigned threads = 0;  // 0: hardware concurrency
  double expm_tol = kDefaultExpmTol;
};

/// Error functional per n; optional collision cross-check per row.
ConvergenceReport sweep_n(const ModelSpec& spec, double theta, const StepFunction& f,
                          std::span<const cplx> v, const std::vector<double>& n_list,
                          const SweepOptions& opts = {});

/// One-row report at a single (n, theta).
ConvergenceReport single_error(const ModelSpec& spec, double n, double theta, const StepFunction& f,
                               std::span<const cplx> v, const SweepOptions& opts = {});

/// Least-squares slope of log E against log n over the largest half of the rows.
RateFit estimate_rate(const ConvergenceReport& report);

/// Error functional and s2 over a theta grid at fixed n.
ConvergenceReport theta_scan(const ModelSpec& spec, double n, const std::vector<double>& theta_grid,
                             const StepFunction& f, std::span<const cplx> v,
                             const SweepOptions& opts = {});

inline constexpr double kThetaGuardBand = 0.05;

/// Generator norm at I and the grid supremum of |T_t(I) - I| over [0, s], per n.
ConvergenceReport tk_check(const ModelSpec& spec, double theta, cplx alpha, double s,
                           const std::vector<double>& n_list, std::size_t grid = 101);

struct OracleComparison {
  ConvergenceReport report;     // two rows per n: collision at dt and at dt/2
  std::vector<double> ratios;   // Richardson ratio per n
  std::vector<double> max_abs_diff;  // |E_semigroup - E_collision| at dt, per n
};

OracleComparison oracle_compare(const ModelSpec& spec, double theta, const StepFunction& f,
                                std::span<const cplx> v, const std::vector<double>& n_list,
                                double dt, std::size_t min_steps = 10);

}  // namespace sqz
