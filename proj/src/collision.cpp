// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/collision.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqz {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_trivial_scattering(const SystemModel& m) {
  if (opnorm(m.S - CMatrix::identity(m.d)) > kModelTol) {
    throw UnsupportedConfigError("collision oracle supports only S = I");
  }
}

// <j| U |0> block of a (system (x) ancilla) operator.
CMatrix ancilla_block(const CMatrix& u, std::size_t d, std::size_t j) {
  CMatrix b(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) b(r, c) = u(r * 2 + j, c * 2);
  return b;
}

struct SegmentMaps {
  std::size_t steps;
  CMatrix u0, u1, v0, v1;  // <0|U|0>, <1|U|0>, same for V
};

}  // namespace

CMatrix step_unitary(const CMatrix& coeff, const CMatrix& heff, double dt) {
  if (!coeff.is_square() || coeff.rows() != heff.rows() || !heff.is_square()) {
    throw std::invalid_argument("step_unitary: coefficient and Hamiltonian must be square and equal size");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("step_unitary: dt must be > 0");
  if (const double h = hermiticity_defect(heff); h > 1e-10) {
    throw std::invalid_argument("step_unitary: effective Hamiltonian is not Hermitian (defect " +
                                std::to_string(h) + ")");
  }
  const CMatrix sp(2, 2, {0.0, 0.0, 1.0, 0.0});  // |1><0|
  const CMatrix sm = sp.adjoint();
  CMatrix gen = std::sqrt(dt) * (kron(coeff, sp) - kron(coeff.adjoint(), sm));
  gen.add_scaled(-kI * dt, kron(heff, CMatrix::identity(2)));
  return expm(gen, 1e-15);
}

std::vector<std::size_t> snap_segments(const StepFunction& f, const CollisionConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("collision: dt must be > 0");
  std::vector<std::size_t> steps;
  for (const auto& seg : f.segments()) {
    const double exact = seg.duration / cfg.dt;
    const double rounded = std::round(exact);
    if (rounded < 1.0 || std::abs(rounded - exact) > cfg.snap_tol * exact) {
      std::ostringstream os;
      os << "collision: segment duration " << seg.duration << " is not a multiple of dt = " << cfg.dt;
      throw std::invalid_argument(os.str());
    }
    const auto n = static_cast<std::size_t>(rounded);
    if (n < cfg.min_steps_per_segment) {
      std::ostringstream os;
      os << "collision: segment resolved by " << n << " steps, need at least "
         << cfg.min_steps_per_segment;
      throw std::invalid_argument(os.str());
    }
    steps.push_back(n);
  }
  return steps;
}

StepPair segment_step_unitaries(const SystemModel& m, const Coefficients& k, cplx alpha, double dt) {
  const CMatrix id = CMatrix::identity(m.d);
  const cplx ab = std::conj(alpha);
  // U: coupling Lnc + alpha, Hamiltonian H + (i/2)(conj(a) Lnc - a Lnc*)
  CMatrix cu = k.Lnc + alpha * id;
  CMatrix hu = m.H;
  hu.add_scaled(0.5 * kI, ab * k.Lnc - alpha * k.Lnc.adjoint());
  // V: coupling Fnc + alpha, Hamiltonian H + Hnc + (i/2)(conj(a) Fnc - a Fnc*)
  CMatrix cv = k.Fnc + alpha * id;
  CMatrix hv = m.H + k.Hnc;
  hv.add_scaled(0.5 * kI, ab * k.Fnc - alpha * k.Fnc.adjoint());
  return {step_unitary(cu, hu, dt), step_unitary(cv, hv, dt)};
}

double collision_error(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                       std::span<const cplx> v, const CollisionConfig& cfg,
                       CollisionDiagnostics* diag) {
  require_trivial_scattering(m);
  if (v.size() != m.d) throw std::invalid_argument("collision_error: vector dimension mismatch");
  const auto steps = snap_segments(f, cfg);
  const Coefficients k = derived_coefficients(m, p);

  std::vector<SegmentMaps> maps;
  CollisionDiagnostics dg;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const StepPair sp = segment_step_unitaries(m, k, f.segments()[i].alpha, cfg.dt);
    dg.max_unitarity_defect = std::max({dg.max_unitarity_defect, unitarity_defect(sp.u),
                                        unitarity_defect(sp.v)});
    maps.push_back({steps[i], ancilla_block(sp.u, m.d, 0), ancilla_block(sp.u, m.d, 1),
                    ancilla_block(sp.v, m.d, 0).adjoint(), ancilla_block(sp.v, m.d, 1).adjoint()});
  }

  CMatrix x = CMatrix::identity(m.d);
  dg.max_transfer_norm = 1.0;
  const bool track_norm = diag != nullptr;
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) {
    for (std::size_t s = 0; s < it->steps; ++s) {
      x = it->v0 * x * it->u0 + it->v1 * x * it->u1;
      if (track_norm) dg.max_transfer_norm = std::max(dg.max_transfer_norm, opnorm(x));
      ++dg.steps;
    }
  }
  if (diag) *diag = dg;

  CMatrix kernel = 2.0 * CMatrix::identity(m.d);
  kernel -= x;
  kernel -= x.adjoint();
  return inner(v, matvec(kernel, v)).real();
}

double brute_force_error(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                         std::span<const cplx> v, const CollisionConfig& cfg) {
  require_trivial_scattering(m);
  if (v.size() != m.d) throw std::invalid_argument("brute_force_error: vector dimension mismatch");
  const auto steps = snap_segments(f, cfg);
  std::size_t total = 0;
  for (auto n : steps) total += n;
  if (total > kBruteForceMaxSteps) {
    throw std::invalid_argument("brute_force_error: " + std::to_string(total) +
                                " steps exceed the limit of " + std::to_string(kBruteForceMaxSteps));
  }
  const Coefficients k = derived_coefficients(m, p);
  const std::size_t d = m.d;
  const std::size_t anc_states = std::size_t{1} << total;

  // Joint index: sys * 2^M + ancilla bits; ancilla k sits at bit (M - 1 - k).
  CVector psi_u(d * anc_states);
  for (std::size_t s = 0; s < d; ++s) psi_u[s * anc_states] = v[s];
  CVector psi_v = psi_u;

  const auto apply = [&](const CMatrix& u2, std::size_t anc, CVector& psi) {
    const std::size_t bit = std::size_t{1} << (total - 1 - anc);
    CVector local(2 * d);
    CVector out(2 * d);
    for (std::size_t rest = 0; rest < anc_states; ++rest) {
      if (rest & bit) continue;
      for (std::size_t s = 0; s < d; ++s) {
        local[s * 2] = psi[s * anc_states + rest];
        local[s * 2 + 1] = psi[s * anc_states + (rest | bit)];
      }
      out = matvec(u2, local);
      for (std::size_t s = 0; s < d; ++s) {
        psi[s * anc_states + rest] = out[s * 2];
        psi[s * anc_states + (rest | bit)] = out[s * 2 + 1];
      }
    }
  };

  std::size_t anc = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const StepPair sp = segment_step_unitaries(m, k, f.segments()[i].alpha, cfg.dt);
    for (std::size_t s = 0; s < steps[i]; ++s, ++anc) {
      apply(sp.u, anc, psi_u);
      apply(sp.v, anc, psi_v);
    }
  }
  double e = 0.0;
  for (std::size_t i = 0; i < psi_u.size(); ++i) e += std::norm(psi_u[i] - psi_v[i]);
  return e;
}

}  // namespace sqz
