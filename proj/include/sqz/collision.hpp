// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

// Repeated-interaction discretization of the two coherent-state QSDEs: one
// fresh two-level ancilla per time step, starting in its vacuum |0>. The
// error functional is obtained by contracting the step maps
//   X -> <0| V_k* X U_k |0>
// backwards from X = I, with no superoperator exponentials involved.
//
// Joint index layout for a single step: system index * 2 + ancilla index.

#pragma once

#include <stdexcept>
#include <vector>

#include "sqz/model.hpp"
#include "sqz/semigroup.hpp"

namespace sqz {

class UnsupportedConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CollisionConfig {
  double dt = 1e-3;
  std::size_t min_steps_per_segment = 10;
  /// Largest relative rounding allowed when snapping a segment to the dt grid.
  double snap_tol = 1e-6;
};

inline constexpr std::size_t kBruteForceMaxSteps = 12;

/// exp(sqrt(dt)(coeff (x) s+ - coeff* (x) s-) - i dt heff (x) I), s+ |0> = |1>.
CMatrix step_unitary(const CMatrix& coeff, const CMatrix& heff, double dt);

/// Step counts per segment after snapping durations to multiples of dt.
std::vector<std::size_t> snap_segments(const StepFunction& f, const CollisionConfig& cfg);

struct CollisionDiagnostics {
  std::size_t steps = 0;
  double max_transfer_norm = 0.0;     // max over k of opnorm(X_k)
  double max_unitarity_defect = 0.0;  // over every step unitary built
};

/// The two one-step unitaries for a segment with amplitude alpha.
struct StepPair {
  CMatrix u;
  CMatrix v;
};
StepPair segment_step_unitaries(const SystemModel& m, const Coefficients& k, cplx alpha, double dt);

double collision_error(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                       std::span<const cplx> v, const CollisionConfig& cfg,
                       CollisionDiagnostics* diag = nullptr);

/// |(U_M...U_1 - V_M...V_1) v (x) |0...0>|^2 on the full joint space of the
/// system and all M <= 12 ancillas.
double brute_force_error(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                         std::span<const cplx> v, const CollisionConfig& cfg);

}  // namespace sqz
