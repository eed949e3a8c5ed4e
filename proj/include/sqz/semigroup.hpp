// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sqz/ito/algebra.hpp"
#include "sqz/model.hpp"
#include "sqz/numkernel/linalg.hpp"

namespace sqz {

/// One constant piece of the coherent amplitude f.
struct StepSegment {
  double duration = 0.0;
  cplx alpha;
};

/// Piecewise-constant coherent amplitude on [0, t]. Never empty once
/// constructed: an empty segment list with horizon t becomes f = 0 on [0, t].
class StepFunction {
 public:
  explicit StepFunction(std::vector<StepSegment> segments, std::optional<double> horizon = {});
  static StepFunction zero(double t) { return StepFunction({}, t); }

  const std::vector<StepSegment>& segments() const noexcept { return segments_; }
  double total_time() const noexcept { return total_; }

 private:
  std::vector<StepSegment> segments_;
  double total_ = 0.0;
};

/// Matrices substituted for the symbols of the Ito algebra.
class SymbolBindings {
 public:
  SymbolBindings(const SystemModel& m, const Coefficients& k);
  void bind(ito::Symbol s, CMatrix value);
  const CMatrix& at(ito::Symbol s) const;
  std::size_t dim() const noexcept { return d_; }

 private:
  std::size_t d_;
  std::array<std::optional<CMatrix>, ito::kSymbolCount> mats_;
};

CMatrix realize(const ito::Word& w, const SymbolBindings& b);

/// Superoperator of a generator polynomial whose every word contains the
/// formal symbol X exactly once: u X v contributes kron(v^T, u), matching
/// column-stacking vectorization.
CMatrix realize_superoperator(const ito::SystemPoly& generator, const SymbolBindings& b);

enum class GeneratorKind {
  transfer,          // X -> vacuum(V* X U)
  adjoint_transfer,  // X -> vacuum(U* X V)
  heisenberg_u,      // X -> vacuum(U* X U)
  heisenberg_v,      // X -> vacuum(V* X V)
};

struct TransferGenerator {
  std::size_t d = 0;
  CMatrix G;  // d^2 x d^2, acting on column-stacked operators
  cplx alpha;
  std::string provenance;

  CMatrix apply(const CMatrix& x) const;
  CMatrix at_identity() const { return apply(CMatrix::identity(d)); }
};

struct GeneratorOptions {
  GeneratorKind kind = GeneratorKind::transfer;
  /// Replace F_nc by L_nc and H_nc by 0, so that both evolutions coincide.
  bool degenerate = false;
};

/// Builds the generator from the symbolic vacuum generator of the two
/// coherent-state QSDEs, with the model's matrices substituted in.
TransferGenerator build_transfer_generator(const SystemModel& m, const SqueezeParams& p,
                                           cplx alpha, const GeneratorOptions& opts = {});

/// T_t(X) = exp(t G) X.
CMatrix evolve(const TransferGenerator& g, const CMatrix& x, double t,
               double tol = kDefaultExpmTol);

/// exp(D1 G_{a1}) o ... o exp(Dm G_{am}) applied to X (the last segment acts first).
CMatrix evolve_step_function(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                             const CMatrix& x, const GeneratorOptions& opts = {},
                             double tol = kDefaultExpmTol);

struct ErrorOptions {
  bool require_normalized = true;
  double tol = kDefaultExpmTol;
  bool degenerate = false;
};

/// <v, (2I - T(I) - T(I)*) v> with T the step-function composition above.
/// For unit v this is |(U_t - V_t) v (x) psi(f)|^2.
double error_norm_squared(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                          std::span<const cplx> v, const ErrorOptions& opts = {});

/// Max of opnorm(T_t(I) - I) over grid points t = j s / (grid - 1).
double sup_deviation(const SystemModel& m, const SqueezeParams& p, cplx alpha, double s,
                     std::size_t grid, double tol = kDefaultExpmTol);

/// opnorm of the generator applied to I.
double generator_norm_at_identity(const SystemModel& m, const SqueezeParams& p, cplx alpha);

}  // namespace sqz
