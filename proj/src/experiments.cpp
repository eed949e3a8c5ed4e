// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

namespace sqz {
namespace {

void require_increasing(const std::vector<double>& xs, const char* what) {
  if (xs.size() < 2) throw std::invalid_argument(std::string(what) + ": need at least 2 entries");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": values must be strictly increasing");
    }
  }
}

// Evaluates rows[i] = job(i) on a small pool; result order is index order.
template <class Job>
std::vector<ReportRow> parallel_rows(std::size_t count, unsigned threads, Job job) {
  std::vector<ReportRow> rows(count);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = job(i);
    return rows;
  }
  std::vector<std::future<void>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) rows[i] = job(i);
    }));
  }
  for (auto& fut : futures) fut.get();
  return rows;
}

std::string describe(const ModelSpec& spec, const StepFunction& f) {
  std::ostringstream os;
  os << "model=" << spec.name << " kappa=" << spec.kappa;
  if (spec.name == "cavity") os << " omega=" << spec.omega << " N=" << spec.N;
  if (spec.zero_L) os << " L=0";
  os << " segments=" << f.segments().size() << " t=" << f.total_time();
  return os.str();
}

ReportRow evaluate_row(const ModelSpec& spec, const SystemModel& m, double n, double theta,
                       const StepFunction& f, std::span<const cplx> v, const SweepOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SqueezeParams p = make_squeeze_params(n, theta);
  ReportRow row;
  row.n = n;
  row.theta = theta;
  row.t = f.total_time();
  row.s2 = p.s2;
  ErrorOptions eo;
  eo.tol = opts.expm_tol;
  row.E_semigroup = error_norm_squared(m, p, f, v, eo);
  if (opts.collision_dt) {
    CollisionConfig cfg;
    cfg.dt = *opts.collision_dt;
    cfg.min_steps_per_segment = opts.collision_min_steps;
    row.dt = cfg.dt;
    row.E_collision = collision_error(m, p, f, v, cfg);
  }
  if (opts.sup_grid) {
    row.sup_deviation = sup_deviation(m, p, opts.diagnostic_alpha, f.total_time(), *opts.sup_grid,
                                      opts.expm_tol);
  }
  if (opts.generator_norm) row.generator_norm_at_I = generator_norm_at_identity(m, p, opts.diagnostic_alpha);
  if (opts.record_tail_mass || spec.name == "cavity") row.tail_mass = tail_mass(m, p, f, v);
  if (opts.timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

void collect_warnings(ConvergenceReport& r) {
  for (const auto& row : r.rows) {
    if (row.tail_mass && *row.tail_mass > kTailMassWarning) {
      std::ostringstream os;
      os << "tail mass " << *row.tail_mass << " above " << kTailMassWarning << " at n=" << row.n
         << " theta=" << row.theta << "; raise the truncation level";
      r.warnings.push_back(os.str());
    }
  }
}

}  // namespace

SystemModel build_model(const ModelSpec& spec) {
  SystemModel m;
  if (spec.name == "atom") {
    m = atom_model(spec.kappa, spec.H.value_or(CMatrix(2, 2)));
  } else if (spec.name == "cavity") {
    m = cavity_model(spec.kappa, spec.omega, spec.N);
    if (spec.H) m = make_system_model(m.S, m.L, *spec.H, m.label);
  } else if (spec.name == "scalar") {
    m = scalar_model(spec.scalar_L);
    if (spec.H) m = make_system_model(m.S, m.L, *spec.H, m.label);
  } else if (spec.name == "custom") {
    if (!spec.L) throw std::invalid_argument("custom model needs an L matrix");
    const std::size_t d = spec.L->rows();
    m = make_system_model(spec.S.value_or(CMatrix::identity(d)), *spec.L,
                          spec.H.value_or(CMatrix(d, d)), "custom");
  } else {
    throw std::invalid_argument("unknown model '" + spec.name + "' (atom, cavity, scalar, custom)");
  }
  if (spec.zero_L) m = make_system_model(m.S, CMatrix(m.d, m.d), m.H, m.label + "[L=0]");
  return m;
}

CVector default_vector(const ModelSpec& spec, std::size_t d) {
  CVector v(d);
  if (spec.name == "cavity" && d > 1) {
    v[1] = 1.0;
  } else {
    v[0] = 1.0;  // atom: e1 is the excited state (sigma_- e1 = e2)
  }
  return v;
}

double tail_mass(const SystemModel& m, const SqueezeParams& p, const StepFunction& f,
                 std::span<const cplx> v) {
  CMatrix top(m.d, m.d);
  top(m.d - 1, m.d - 1) = 1.0;
  double worst = 0.0;
  for (auto kind : {GeneratorKind::heisenberg_u, GeneratorKind::heisenberg_v}) {
    GeneratorOptions go;
    go.kind = kind;
    const CMatrix evolved = evolve_step_function(m, p, f, top, go);
    worst = std::max(worst, inner(v, matvec(evolved, v)).real());
  }
  return worst;
}

ConvergenceReport sweep_n(const ModelSpec& spec, double theta, const StepFunction& f,
                          std::span<const cplx> v, const std::vector<double>& n_list,
                          const SweepOptions& opts) {
  require_increasing(n_list, "sweep_n n-list");
  const SystemModel m = build_model(spec);
  const CVector vv(v.begin(), v.end());
  ConvergenceReport r;
  r.config = describe(spec, f) + " theta=" + std::to_string(theta);
  r.rows = parallel_rows(n_list.size(), opts.threads, [&](std::size_t i) {
    return evaluate_row(spec, m, n_list[i], theta, f, vv, opts);
  });
  if (r.rows.size() >= 4) {
    try {
      r.fit = estimate_rate(r);
    } catch (const std::domain_error&) {
      // zero errors (e.g. L = 0) have no log-log slope
    }
  }
  collect_warnings(r);
  return r;
}

ConvergenceReport single_error(const ModelSpec& spec, double n, double theta, const StepFunction& f,
                               std::span<const cplx> v, const SweepOptions& opts) {
  const SystemModel m = build_model(spec);
  ConvergenceReport r;
  r.config = describe(spec, f) + " theta=" + std::to_string(theta);
  r.rows.push_back(evaluate_row(spec, m, n, theta, f, v, opts));
  collect_warnings(r);
  return r;
}

RateFit estimate_rate(const ConvergenceReport& report) {
  const auto& rows = report.rows;
  if (rows.size() < 4) throw std::invalid_argument("estimate_rate: need at least 4 rows");
  const std::size_t window = std::max<std::size_t>(2, rows.size() / 2);
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = rows.size() - window; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.E_semigroup || !(*row.E_semigroup > 0.0) || !(row.n > 0.0)) {
      throw std::domain_error("estimate_rate: non-positive error in the fit window");
    }
    xs.push_back(std::log(row.n));
    ys.push_back(std::log(*row.E_semigroup));
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw std::domain_error("estimate_rate: degenerate n values");
  RateFit fit;
  fit.slope = (k * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / k;
  return fit;
}

ConvergenceReport theta_scan(const ModelSpec& spec, double n, const std::vector<double>& theta_grid,
                             const StepFunction& f, std::span<const cplx> v,
                             const SweepOptions& opts) {
  if (theta_grid.empty()) throw std::invalid_argument("theta_scan: empty grid");
  for (double th : theta_grid) {
    if (!(std::abs(th) <= std::numbers::pi - kThetaGuardBand)) {
      throw std::invalid_argument("theta_scan: grid point " + std::to_string(th) +
                                  " lies within 0.05 of +-pi (guard band)");
    }
  }
  const SystemModel m = build_model(spec);
  const CVector vv(v.begin(), v.end());
  ConvergenceReport r;
  r.config = describe(spec, f) + " n=" + std::to_string(n);
  r.rows = parallel_rows(theta_grid.size(), opts.threads, [&](std::size_t i) {
    return evaluate_row(spec, m, n, theta_grid[i], f, vv, opts);
  });
  collect_warnings(r);
  return r;
}

ConvergenceReport tk_check(const ModelSpec& spec, double theta, cplx alpha, double s,
                           const std::vector<double>& n_list, std::size_t grid) {
  require_increasing(n_list, "tk_check n-list");
  const SystemModel m = build_model(spec);
  ConvergenceReport r;
  std::ostringstream os;
  os << "model=" << spec.name << " kappa=" << spec.kappa << " alpha=" << alpha << " s=" << s
     << " grid=" << grid << " theta=" << theta;
  r.config = os.str();
  r.rows = parallel_rows(n_list.size(), 0, [&](std::size_t i) {
    const SqueezeParams p = make_squeeze_params(n_list[i], theta);
    ReportRow row;
    row.n = p.n;
    row.theta = theta;
    row.t = s;
    row.s2 = p.s2;
    row.generator_norm_at_I = generator_norm_at_identity(m, p, alpha);
    row.sup_deviation = sup_deviation(m, p, alpha, s, grid);
    return row;
  });
  return r;
}

OracleComparison oracle_compare(const ModelSpec& spec, double theta, const StepFunction& f,
                                std::span<const cplx> v, const std::vector<double>& n_list,
                                double dt, std::size_t min_steps) {
  require_increasing(n_list, "oracle_compare n-list");
  OracleComparison out;
  SweepOptions coarse;
  coarse.collision_dt = dt;
  coarse.collision_min_steps = min_steps;
  SweepOptions fine = coarse;
  fine.collision_dt = dt / 2.0;
  const ConvergenceReport a = sweep_n(spec, theta, f, v, n_list, coarse);
  const ConvergenceReport b = sweep_n(spec, theta, f, v, n_list, fine);
  out.report.config = a.config + " dt=" + std::to_string(dt);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    out.report.rows.push_back(a.rows[i]);
    out.report.rows.push_back(b.rows[i]);
    const double ea = *a.rows[i].E_collision - *a.rows[i].E_semigroup;
    const double eb = *b.rows[i].E_collision - *b.rows[i].E_semigroup;
    out.ratios.push_back(eb == 0.0 ? std::nan("") : ea / eb);
    out.max_abs_diff.push_back(std::abs(ea));
  }
  out.report.warnings = a.warnings;
  return out;
}

}  // namespace sqz
