// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sqz/numkernel/linalg.hpp"

namespace sqz {

SqueezeParams make_squeeze_params(double n, double theta) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    std::ostringstream os;
    os << "squeezing strength n must be a positive real, got " << n;
    throw std::invalid_argument(os.str());
  }
  if (!std::isfinite(theta) || !(theta > -std::numbers::pi && theta < std::numbers::pi)) {
    std::ostringstream os;
    os << "degenerate squeezing phase: theta = " << theta << " must lie in the open interval (-pi, pi)";
    throw DegeneratePhaseError(os.str());
  }
  SqueezeParams p;
  p.n = n;
  p.theta = theta;
  p.c = std::polar(std::sqrt(n * (n + 1.0)), theta);
  p.cbar = std::conj(p.c);
  p.a = p.c.real();
  p.s2 = 2.0 * n + 1.0 + 2.0 * p.a;
  if (!(p.s2 >= kPhaseGuard)) {
    std::ostringstream os;
    os << "degenerate squeezing phase: 2n+1+2Re(c) = " << p.s2 << " below guard " << kPhaseGuard
       << " at theta = " << theta;
    throw DegeneratePhaseError(os.str());
  }
  p.s = std::sqrt(p.s2);
  return p;
}

SystemModel make_system_model(CMatrix S, CMatrix L, CMatrix H, std::string label) {
  if (!L.is_square() || L.empty()) throw std::invalid_argument("system model: L must be square");
  const std::size_t d = L.rows();
  if (S.rows() != d || S.cols() != d || H.rows() != d || H.cols() != d) {
    throw std::invalid_argument("system model: S, L, H must share dimension " + std::to_string(d));
  }
  if (const double u = unitarity_defect(S); u >= kModelTol) {
    throw std::invalid_argument("system model: S is not unitary (|SS* - I| = " +
                                std::to_string(u) + ")");
  }
  if (const double h = hermiticity_defect(H); h >= kModelTol) {
    throw std::invalid_argument("system model: H is not self-adjoint (|H - H*| = " +
                                std::to_string(h) + ")");
  }
  return SystemModel{d, std::move(S), std::move(L), std::move(H), std::move(label)};
}

Coefficients derived_coefficients(const SystemModel& m, const SqueezeParams& p) {
  const CMatrix Ls = m.L.adjoint();
  const cplx n = p.n;
  const cplx lnc_l = (n + 1.0 + p.cbar) / p.s;
  const cplx fnc_l = (n + p.cbar) / p.s;
  const cplx lstar = (n + p.c) / p.s;

  Coefficients k;
  k.Lnc = lnc_l * m.L - lstar * Ls;
  k.Fnc = fnc_l * m.L - lstar * Ls;

  const CMatrix LL = m.L * m.L;
  const CMatrix LsLs = Ls * Ls;
  const CMatrix LsL = Ls * m.L;
  CMatrix inner = ((n + p.cbar) / p.s2) * LL;
  inner.add_scaled(-(n + p.c) / p.s2, LsLs);
  inner.add_scaled((p.cbar - p.c) / p.s2, LsL);
  k.Hnc = cplx{0.0, -0.5} * inner;
  return k;
}

CMatrix sigma_plus() { return CMatrix(2, 2, {0.0, 1.0, 0.0, 0.0}); }
CMatrix sigma_minus() { return CMatrix(2, 2, {0.0, 0.0, 1.0, 0.0}); }

CMatrix lowering_operator(std::size_t N) {
  if (N < 1) throw std::invalid_argument("lowering operator: truncation level must be >= 1");
  CMatrix b(N + 1, N + 1);
  for (std::size_t i = 1; i <= N; ++i) b(i - 1, i) = std::sqrt(static_cast<double>(i));
  return b;
}

SystemModel atom_model(double kappa, const CMatrix& H) {
  if (!(kappa > 0.0)) throw std::invalid_argument("atom model: kappa must be > 0");
  return make_system_model(CMatrix::identity(2), kappa * sigma_minus(), H, "atom");
}

SystemModel cavity_model(double kappa, double omega, std::size_t N) {
  if (!(kappa > 0.0)) throw std::invalid_argument("cavity model: kappa must be > 0");
  const CMatrix b = lowering_operator(N);
  return make_system_model(CMatrix::identity(N + 1), kappa * b, omega * (b.adjoint() * b),
                           "cavity(N=" + std::to_string(N) + ")");
}

SystemModel scalar_model(cplx l) {
  return make_system_model(CMatrix::identity(1), CMatrix(1, 1, {l}), CMatrix(1, 1), "scalar");
}

}  // namespace sqz
