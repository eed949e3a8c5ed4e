// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "sqz/numkernel/cmatrix.hpp"

namespace sqz {

inline constexpr double kExpmMinTol = 1e-15;
inline constexpr double kExpmMaxTol = 1e-6;
inline constexpr double kDefaultExpmTol = 1e-14;

double norm1(const CMatrix& m);     // max column sum
double norm_inf(const CMatrix& m);  // max row sum
double norm1(std::span<const cplx> v);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
///
/// The series is cut as soon as the tail bound
///   |B^k/k!| * b/(k+1) / (1 - b/(k+2)),  b = |B|_1 <= 1/2,
/// drops below tol / 2^s, where 2^s is the scaling factor. The result is
/// within roughly tol of exp(m) for matrices whose exponential is bounded
/// (contractions, unitaries); tol must lie in [1e-15, 1e-6].
CMatrix expm(const CMatrix& m, double tol = kDefaultExpmTol);

/// exp(t * m) v without forming the exponential. The interval is split into
/// ceil(t |m|_1) pieces, each advanced by a Taylor series with the same tail
/// bound as expm (relative to the running vector norm).
CVector expm_apply(const CMatrix& m, std::span<const cplx> v, double t = 1.0,
                   double tol = kDefaultExpmTol);

/// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi on
/// the real 2n x 2n embedding; each eigenvalue appears once).
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// Largest singular value, from the top eigenvalue of m* m.
double opnorm(const CMatrix& m);

/// opnorm(m m* - I)
double unitarity_defect(const CMatrix& m);
/// opnorm(m - m*)
double hermiticity_defect(const CMatrix& m);

}  // namespace sqz
