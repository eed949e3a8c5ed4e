// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sqz/ito/qsde_library.hpp"

namespace sqz {

using ito::Symbol;

StepFunction::StepFunction(std::vector<StepSegment> segments, std::optional<double> horizon)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    if (!horizon || !(*horizon > 0.0)) {
      throw std::invalid_argument("step function: empty segment list needs a positive horizon t");
    }
    segments_.push_back({*horizon, 0.0});
  }
  for (const auto& s : segments_) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw std::invalid_argument("step function: segment durations must be positive");
    }
    if (!std::isfinite(s.alpha.real()) || !std::isfinite(s.alpha.imag())) {
      throw std::invalid_argument("step function: non-finite amplitude");
    }
    total_ += s.duration;
  }
  if (horizon && std::abs(total_ - *horizon) > 1e-12 * std::max(1.0, *horizon)) {
    std::ostringstream os;
    os << "step function: segments cover " << total_ << " but horizon is " << *horizon;
    throw std::invalid_argument(os.str());
  }
}

SymbolBindings::SymbolBindings(const SystemModel& m, const Coefficients& k) : d_(m.d) {
  bind(Symbol::L, m.L);
  bind(Symbol::Lstar, m.L.adjoint());
  bind(Symbol::S, m.S);
  bind(Symbol::Sstar, m.S.adjoint());
  bind(Symbol::H, m.H);
  bind(Symbol::Hnc, k.Hnc);
  bind(Symbol::Lnc, k.Lnc);
  bind(Symbol::Lncstar, k.Lnc.adjoint());
  bind(Symbol::Fnc, k.Fnc);
  bind(Symbol::Fncstar, k.Fnc.adjoint());
}

void SymbolBindings::bind(Symbol s, CMatrix value) {
  if (value.rows() != d_ || value.cols() != d_) {
    throw std::invalid_argument("symbol binding for " + ito::to_string(s) + " has wrong dimension");
  }
  mats_[static_cast<std::size_t>(s)] = std::move(value);
}

const CMatrix& SymbolBindings::at(Symbol s) const {
  const auto& m = mats_[static_cast<std::size_t>(s)];
  if (!m) throw std::invalid_argument("no matrix bound to symbol " + ito::to_string(s));
  return *m;
}

CMatrix realize(const ito::Word& w, const SymbolBindings& b) {
  if (w.empty()) return CMatrix::identity(b.dim());
  CMatrix r = b.at(w.front());
  for (std::size_t i = 1; i < w.size(); ++i) r = r * b.at(w[i]);
  return r;
}

CMatrix realize_superoperator(const ito::SystemPoly& generator, const SymbolBindings& b) {
  const std::size_t d = b.dim();
  CMatrix g(d * d, d * d);
  for (const auto& [w, c] : generator.terms()) {
    const auto pos = std::find(w.begin(), w.end(), Symbol::X);
    if (pos == w.end() || std::find(pos + 1, w.end(), Symbol::X) != w.end() ||
        std::find(w.begin(), w.end(), Symbol::Xstar) != w.end()) {
      throw std::invalid_argument("generator word '" + ito::to_string(w) +
                                  "' must contain X exactly once");
    }
    const CMatrix left = realize(ito::Word(w.begin(), pos), b);
    const CMatrix right = realize(ito::Word(pos + 1, w.end()), b);
    g.add_scaled(c, kron(right.transpose(), left));
  }
  return g;
}

CMatrix TransferGenerator::apply(const CMatrix& x) const {
  if (x.rows() != d || x.cols() != d) throw std::invalid_argument("generator: operator dimension mismatch");
  return unvec(matvec(G, vec(x)), d, d);
}

namespace {

ito::SystemPoly generator_poly(GeneratorKind kind, cplx alpha) {
  switch (kind) {
    case GeneratorKind::transfer: return ito::transfer_generator_poly(alpha);
    case GeneratorKind::adjoint_transfer: return ito::adjoint_transfer_generator_poly(alpha);
    case GeneratorKind::heisenberg_u: return ito::heisenberg_u_generator_poly(alpha);
    case GeneratorKind::heisenberg_v: return ito::heisenberg_v_generator_poly(alpha);
  }
  throw std::logic_error("unknown generator kind");
}

const char* kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::transfer: return "V*XU";
    case GeneratorKind::adjoint_transfer: return "U*XV";
    case GeneratorKind::heisenberg_u: return "U*XU";
    case GeneratorKind::heisenberg_v: return "V*XV";
  }
  return "?";
}

}  // namespace

TransferGenerator build_transfer_generator(const SystemModel& m, const SqueezeParams& p,
                                           cplx alpha, const GeneratorOptions& opts) {
  const Coefficients k = derived_coefficients(m, p);
  SymbolBindings b(m, k);
  if (opts.degenerate) {
    b.bind(Symbol::Fnc, k.Lnc);
    b.bind(Symbol::Fncstar, k.Lnc.adjoint());
    b.bind(Symbol::Hnc, CMatrix(m.d, m.d));
  }
  std::ostringstream prov;
  prov << kind_name(opts.kind) << " generator for " << m.label << " at n=" << p.n
       << " theta=" << p.theta << " alpha=" << alpha << (opts.degenerate ? " (degenerate)" : "");
  return TransferGenerator{m.d, realize_superoperator(generator_poly(opts.kind, alpha), b), alpha,
                           prov.str()};
}

CMatrix evolve(const TransferGenerator& g, const CMatrix& x, double t, double tol) {
  if (x.rows() != g.d || x.cols() != g.d) throw std::invalid_argument("evolve: operator dimension mismatch");
  return unvec(expm_apply(g.G, vec(x), t, tol), g.d, g.d);
}

CMatrix evolve_step_function(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                             const CMatrix& x, const GeneratorOptions& opts, double tol) {
  CVector w = vec(x);
  const auto& segs = f.segments();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    const TransferGenerator g = build_transfer_generator(m, p, it->alpha, opts);
    w = expm_apply(g.G, w, it->duration, tol);
  }
  return unvec(w, m.d, m.d);
}

double error_norm_squared(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                          std::span<const cplx> v, const ErrorOptions& opts) {
  if (v.size() != m.d) throw std::invalid_argument("error_norm_squared: vector dimension mismatch");
  if (opts.require_normalized && std::abs(norm2(v) - 1.0) > 1e-10) {
    throw std::invalid_argument("error_norm_squared: v must be normalized (|v| = " +
                                std::to_string(norm2(v)) + ")");
  }
  GeneratorOptions gopts;
  gopts.degenerate = opts.degenerate;
  const CMatrix t = evolve_step_function(m, p, f, CMatrix::identity(m.d), gopts, opts.tol);
  CMatrix kernel = 2.0 * CMatrix::identity(m.d);
  kernel -= t;
  kernel -= t.adjoint();
  const CVector kv = matvec(kernel, v);
  const cplx e = inner(v, kv);
  const double scale = std::max(1.0, inner(v, v).real());
  if (std::abs(e.imag()) > 1e-9 * scale || e.real() < -1e-9 * scale ||
      e.real() > 4.0 * scale + 1e-9) {
    std::ostringstream os;
    os << "error_norm_squared: value " << e << " outside the admissible range";
    throw std::runtime_error(os.str());
  }
  return e.real();
}

double sup_deviation(const SystemModel& m, const SqueezeParams& p, cplx alpha, double s,
                     std::size_t grid, double tol) {
  if (!(s > 0.0)) throw std::invalid_argument("sup_deviation: horizon s must be > 0");
  if (grid < 2) throw std::invalid_argument("sup_deviation: grid must have >= 2 points");
  const TransferGenerator g = build_transfer_generator(m, p, alpha);
  const CMatrix id = CMatrix::identity(m.d);
  const double h = s / static_cast<double>(grid - 1);
  CVector w = vec(id);
  double best = 0.0;
  for (std::size_t j = 1; j < grid; ++j) {
    w = expm_apply(g.G, w, h, tol);
    best = std::max(best, opnorm(unvec(w, m.d, m.d) - id));
  }
  return best;
}

double generator_norm_at_identity(const SystemModel& m, const SqueezeParams& p, cplx alpha) {
  return opnorm(build_transfer_generator(m, p, alpha).at_identity());
}

}  // namespace sqz
