// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/ito/qsde_library.hpp"

namespace sqz::ito {
namespace {

SystemPoly sym(Symbol s, cplx c = 1.0) { return SystemPoly::symbol(s, c); }
SystemPoly one(cplx c = 1.0) { return SystemPoly::identity(c); }

constexpr cplx kI{0.0, 1.0};

}  // namespace

ItoExpression squeezed_driven_qsde(const SqueezeParams& p) {
  const SystemPoly L = sym(Symbol::L);
  const SystemPoly Ls = sym(Symbol::Lstar);
  ItoExpression e;
  e.add(L, Diff::dBstar);
  e.add(-1.0 * Ls, Diff::dB);
  SystemPoly drift = p.cbar * (L * L);
  drift -= p.n * (L * Ls);
  drift -= (p.n + 1.0) * (Ls * L);
  drift += p.c * (Ls * Ls);
  e.add(0.5 * drift, Diff::dt);
  e.add(sym(Symbol::H, -kI), Diff::dt);
  return e;
}

ItoExpression qsde_without_gauge() {
  const SystemPoly lnc = sym(Symbol::Lnc);
  const SystemPoly lncs = sym(Symbol::Lncstar);
  ItoExpression e;
  e.add(lnc, Diff::dAstar);
  e.add(-1.0 * lncs, Diff::dA);
  e.add(-0.5 * (lncs * lnc), Diff::dt);
  e.add(sym(Symbol::H, -kI), Diff::dt);
  return e;
}

ItoExpression qsde_u() {
  const SystemPoly lnc = sym(Symbol::Lnc);
  const SystemPoly lncs = sym(Symbol::Lncstar);
  ItoExpression e;
  e.add(sym(Symbol::S) - one(), Diff::dLambda);
  e.add(lnc, Diff::dAstar);
  e.add(-1.0 * (lncs * sym(Symbol::S)), Diff::dA);
  e.add(-0.5 * (lncs * lnc), Diff::dt);
  e.add(sym(Symbol::H, -kI), Diff::dt);
  return e;
}

ItoExpression qsde_v() {
  const SystemPoly fnc = sym(Symbol::Fnc);
  const SystemPoly fncs = sym(Symbol::Fncstar);
  ItoExpression e;
  e.add(sym(Symbol::S) - one(), Diff::dLambda);
  e.add(fnc, Diff::dAstar);
  e.add(-1.0 * (fncs * sym(Symbol::S)), Diff::dA);
  e.add(-0.5 * (fncs * fnc), Diff::dt);
  e.add(-kI * (sym(Symbol::H) + sym(Symbol::Hnc)), Diff::dt);
  return e;
}

ItoExpression z_driven_qsde_v(const SqueezeParams& p) {
  const SystemPoly L = sym(Symbol::L);
  const SystemPoly Ls = sym(Symbol::Lstar);
  ItoExpression e;
  e.add(L, Diff::dZstar);
  e.add(-1.0 * Ls, Diff::dZ);
  SystemPoly drift = (p.cbar - (p.n + p.cbar) / p.s2) * (L * L);
  drift -= p.n * (L * Ls);
  drift -= p.n * (Ls * L);
  drift += (p.c - (p.n + p.c) / p.s2) * (Ls * Ls);
  e.add(0.5 * drift, Diff::dt);
  e.add(-kI * (sym(Symbol::H) + sym(Symbol::Hnc)), Diff::dt);
  return e;
}

ItoExpression weyl_qsde(cplx alpha) {
  ItoExpression e;
  e.add(one(alpha), Diff::dAstar);
  e.add(one(-std::conj(alpha)), Diff::dA);
  e.add(one(-0.5 * std::norm(alpha)), Diff::dt);
  return e;
}

ItoExpression dress_with_weyl(const ItoExpression& qsde, cplx alpha) {
  const ItoExpression w = weyl_qsde(alpha);
  return qsde + w + ito_multiply(qsde, w);
}

ItoExpression generator_u(cplx alpha) {
  const SystemPoly k = sym(Symbol::Lnc) + one(alpha);
  const SystemPoly ks = k.adjoint();
  const SystemPoly lnc = sym(Symbol::Lnc);
  ItoExpression e;
  e.add(sym(Symbol::S) - one(), Diff::dLambda);
  e.add(k, Diff::dAstar);
  e.add(-1.0 * (ks * sym(Symbol::S)), Diff::dA);
  e.add(-0.5 * (ks * k), Diff::dt);
  e.add(0.5 * (std::conj(alpha) * lnc - alpha * lnc.adjoint()), Diff::dt);
  e.add(sym(Symbol::H, -kI), Diff::dt);
  return e;
}

ItoExpression generator_v_adjoint(cplx alpha) {
  const SystemPoly k = sym(Symbol::Fnc) + one(alpha);
  const SystemPoly ks = k.adjoint();
  const SystemPoly fnc = sym(Symbol::Fnc);
  ItoExpression e;
  e.add(sym(Symbol::Sstar) - one(), Diff::dLambda);
  e.add(ks, Diff::dA);
  e.add(-1.0 * (sym(Symbol::Sstar) * k), Diff::dAstar);
  e.add(-0.5 * (ks * k), Diff::dt);
  e.add(-0.5 * (std::conj(alpha) * fnc - alpha * fnc.adjoint()), Diff::dt);
  e.add(kI * (sym(Symbol::H) + sym(Symbol::Hnc)), Diff::dt);
  return e;
}

SystemPoly generator_at_identity(cplx alpha) {
  const SystemPoly diff = sym(Symbol::Lnc) - sym(Symbol::Fnc);
  SystemPoly g = -0.5 * (diff.adjoint() * diff);
  g += std::conj(alpha) * diff;
  g -= alpha * diff.adjoint();
  return g;
}

SystemPoly generator_at_identity_closed(cplx alpha, const SqueezeParams& p) {
  const SystemPoly L = sym(Symbol::L);
  const SystemPoly Ls = sym(Symbol::Lstar);
  SystemPoly g = (-0.5 / p.s2) * (Ls * L);
  g += (std::conj(alpha) / p.s) * L;
  g -= (alpha / p.s) * Ls;
  return g;
}

SystemPoly transfer_generator_poly(cplx alpha) {
  return vacuum_generator(generator_v_adjoint(alpha), generator_u(alpha));
}

SystemPoly heisenberg_u_generator_poly(cplx alpha) {
  const ItoExpression u = generator_u(alpha);
  return vacuum_generator(u.adjoint(), u);
}

SystemPoly heisenberg_v_generator_poly(cplx alpha) {
  const ItoExpression vs = generator_v_adjoint(alpha);
  return vacuum_generator(vs, vs.adjoint());
}

SystemPoly adjoint_transfer_generator_poly(cplx alpha) {
  return vacuum_generator(generator_u(alpha).adjoint(), generator_v_adjoint(alpha).adjoint());
}

SystemPoly at_identity(const SystemPoly& generator) {
  return substitute(generator, Symbol::X, SystemPoly::identity());
}

}  // namespace sqz::ito
