// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include "sqz/numkernel/cmatrix.hpp"

namespace sqz {

/// Raised when the squeezing phase sits on (or numerically at) theta = +-pi,
/// where 2n + 1 + 2 Re(c) collapses and the strong-squeezing limit fails.
class DegeneratePhaseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kPhaseGuard = 1e-9;

/// Squeezing strength n > 0 and phase theta, with every derived constant.
///   c = sqrt(n(n+1)) e^{i theta},  a = Re c,  s2 = 2n + 1 + 2a,  s = sqrt(s2)
struct SqueezeParams {
  double n = 1.0;
  double theta = 0.0;
  cplx c;
  cplx cbar;
  double a = 0.0;
  double s2 = 0.0;
  double s = 0.0;
};

SqueezeParams make_squeeze_params(double n, double theta);

/// Finite-dimensional system: scattering S (unitary), coupling L, Hamiltonian H.
struct SystemModel {
  std::size_t d = 0;
  CMatrix S;
  CMatrix L;
  CMatrix H;
  std::string label;
};

inline constexpr double kModelTol = 1e-10;

/// Validates shapes, unitarity of S and self-adjointness of H.
SystemModel make_system_model(CMatrix S, CMatrix L, CMatrix H, std::string label);

/// The coupling operators the two evolutions are driven by, and the
/// correction Hamiltonian carried by the essentially commutative one.
struct Coefficients {
  CMatrix Lnc;
  CMatrix Fnc;
  CMatrix Hnc;
};

Coefficients derived_coefficients(const SystemModel& m, const SqueezeParams& p);

// Two-level operators in the basis (e1, e2) = (excited, ground).
CMatrix sigma_plus();   // [[0, 1], [0, 0]]
CMatrix sigma_minus();  // [[0, 0], [1, 0]]

/// Truncated annihilation operator on span{phi_0, ..., phi_N}: b phi_i = sqrt(i) phi_{i-1}.
CMatrix lowering_operator(std::size_t N);

SystemModel atom_model(double kappa, const CMatrix& H);
/// Cavity truncated at level N (dimension N+1), L = kappa b, H = omega b*b (hbar = 1).
SystemModel cavity_model(double kappa, double omega, std::size_t N);
/// One-dimensional system with L = l, H = 0, S = 1.
SystemModel scalar_model(cplx l = 1.0);

}  // namespace sqz
