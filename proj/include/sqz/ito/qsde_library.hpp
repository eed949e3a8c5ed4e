// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

// Right-hand sides of the QSDEs used throughout the toolkit, written as Ito
// expressions. dU = {expr} U for forward equations; the adjoint-form
// equation for V(alpha) is dV* = V* {expr}.

#pragma once

#include "sqz/ito/algebra.hpp"

namespace sqz::ito {

/// L dB* - L* dB + (1/2)(cbar LL - n LL* - (n+1) L*L + c L*L*) dt - i H dt
ItoExpression squeezed_driven_qsde(const SqueezeParams& p);

/// Lnc dA* - Lnc* dA - (1/2) Lnc* Lnc dt - i H dt
ItoExpression qsde_without_gauge();

/// (S - I) dLambda + Lnc dA* - Lnc* S dA - (1/2) Lnc* Lnc dt - i H dt
ItoExpression qsde_u();

/// (S - I) dLambda + Fnc dA* - Fnc* S dA - (1/2) Fnc* Fnc dt - i (H + Hnc) dt
ItoExpression qsde_v();

/// The V equation with S = I driven by the Z noises:
/// L dZ* - L* dZ + (1/2)(LL (cbar - (n+cbar)/s2) - n LL* - n L*L + L*L* (c - (n+c)/s2)) dt
///   - i (H + Hnc) dt
ItoExpression z_driven_qsde_v(const SqueezeParams& p);

/// Weyl operator: alpha dA* - conj(alpha) dA - |alpha|^2/2 dt
ItoExpression weyl_qsde(cplx alpha);

/// Forward equation of U W(alpha), where dU = {qsde} U:
/// qsde + weyl + qsde * weyl (Ito product).
ItoExpression dress_with_weyl(const ItoExpression& qsde, cplx alpha);

/// dU(alpha) = {(S - I) dLambda + (Lnc + alpha) dA* - (Lnc + alpha)* S dA
///              - (1/2)(Lnc + alpha)*(Lnc + alpha) dt + (1/2)(conj(alpha) Lnc - alpha Lnc*) dt
///              - i H dt} U(alpha)
ItoExpression generator_u(cplx alpha);

/// dV(alpha)* = V(alpha)* {(S* - I) dLambda + (Fnc + alpha)* dA - S*(Fnc + alpha) dA*
///              - (1/2)(Fnc + alpha)*(Fnc + alpha) dt - (1/2)(conj(alpha) Fnc - alpha Fnc*) dt
///              + i (H + Hnc) dt}
ItoExpression generator_v_adjoint(cplx alpha);

/// Generator at the identity in coefficient form:
/// -(1/2)(Lnc - Fnc)*(Lnc - Fnc) + conj(alpha)(Lnc - Fnc) - alpha (Lnc - Fnc)*
SystemPoly generator_at_identity(cplx alpha);

/// The same in terms of L: -(1/2) L*L / s2 + (conj(alpha) L - alpha L*) / s
SystemPoly generator_at_identity_closed(cplx alpha, const SqueezeParams& p);

/// Formal generator of X -> id (x) vacuum(V(alpha)* X U(alpha)).
SystemPoly transfer_generator_poly(cplx alpha);
/// X -> id (x) vacuum(U(alpha)* X U(alpha)), the Heisenberg-picture evolution under U alone.
SystemPoly heisenberg_u_generator_poly(cplx alpha);
/// X -> id (x) vacuum(V(alpha)* X V(alpha)).
SystemPoly heisenberg_v_generator_poly(cplx alpha);
/// X -> id (x) vacuum(U(alpha)* X V(alpha)); the semigroup this generates maps X to T(X*)*.
SystemPoly adjoint_transfer_generator_poly(cplx alpha);

/// Setting X = I.
SystemPoly at_identity(const SystemPoly& generator);

}  // namespace sqz::ito
