// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/cli/run.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sqz/cli/config.hpp"
#include "sqz/cli/report_io.hpp"
#include "sqz/ito/identities.hpp"
#include "sqz/numkernel/kernels.hpp"

namespace sqz::cli {
namespace {

using ojson = nlohmann::ordered_json;

constexpr double kRichardsonLow = 1.7;
constexpr double kRichardsonHigh = 2.3;
constexpr double kRichardsonFloor = 1e-9;  // below this the ratio is roundoff

// Flag values; unset flags leave the config file's values alone.
struct Flags {
  std::string config;
  std::optional<std::string> model;
  std::optional<double> kappa, omega;
  std::optional<std::size_t> N;
  bool zero_L = false;
  std::optional<double> n, theta, t, s, dt, tol, expm_tol, compare_tol, expect_slope, slope_tol;
  std::vector<double> n_list, theta_grid, alpha, vector;
  std::vector<std::string> segments;
  std::optional<std::size_t> grid, min_steps, samples, threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir, csv, json;
  bool timing = false;
};

void add_options(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--model", f.model, "atom | cavity | scalar | custom");
  sub->add_option("--kappa", f.kappa, "coupling strength");
  sub->add_option("--omega", f.omega, "cavity frequency");
  sub->add_option("--N", f.N, "cavity truncation level");
  sub->add_flag("--zero-L", f.zero_L, "replace L by 0");
  sub->add_option("--n", f.n, "squeezing strength n > 0");
  sub->add_option("--n-list", f.n_list, "comma-separated increasing n values")->delimiter(',');
  sub->add_option("--theta", f.theta, "squeezing phase in (-pi, pi)");
  sub->add_option("--theta-grid", f.theta_grid, "comma-separated phases")->delimiter(',');
  sub->add_option("--t", f.t, "final time");
  sub->add_option("--segment", f.segments, "step of f as DURATION:RE:IM (repeatable)");
  sub->add_option("--alpha", f.alpha, "amplitude RE[,IM] for tk-check")->delimiter(',')->expected(1, 2);
  sub->add_option("--s", f.s, "tk-check horizon");
  sub->add_option("--grid", f.grid, "tk-check time grid size");
  sub->add_option("--vector", f.vector, "real components of v, comma-separated")->delimiter(',');
  sub->add_option("--dt", f.dt, "collision step size");
  sub->add_option("--min-steps", f.min_steps, "minimum collision steps per segment");
  sub->add_option("--tol", f.tol, "identity tolerance");
  sub->add_option("--expm-tol", f.expm_tol, "matrix exponential tolerance");
  sub->add_option("--compare-tol", f.compare_tol, "semigroup vs collision tolerance");
  sub->add_option("--samples", f.samples, "random draws per identity");
  sub->add_option("--seed", f.seed, "sampling seed");
  sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
  sub->add_option("--expect-slope", f.expect_slope, "rate: expected log-log slope");
  sub->add_option("--slope-tol", f.slope_tol, "rate: allowed slope deviation");
  sub->add_option("--out-dir", f.out_dir, "directory for <command>.csv and <command>.json");
  sub->add_option("--csv", f.csv, "CSV output path");
  sub->add_option("--json", f.json, "JSON report path");
  sub->add_flag("--timing", f.timing, "fill the wall_ms column");
}

StepSegment parse_segment(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--segment '" + text + "': expected DURATION:RE:IM");
    }
  }
  if (parts.empty() || parts.size() > 3) throw ConfigError("--segment '" + text + "': expected DURATION:RE:IM");
  parts.resize(3, 0.0);
  return {parts[0], {parts[1], parts[2]}};
}

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (f.model) c.model.name = *f.model;
  if (f.kappa) c.model.kappa = *f.kappa;
  if (f.omega) c.model.omega = *f.omega;
  if (f.N) c.model.N = *f.N;
  if (f.zero_L) c.model.zero_L = true;
  if (f.n) c.n = *f.n;
  if (!f.n_list.empty()) c.n_list = f.n_list;
  if (f.theta) c.theta = *f.theta;
  if (!f.theta_grid.empty()) c.theta_grid = f.theta_grid;
  if (f.t) c.t = *f.t;
  if (!f.segments.empty()) {
    c.segments.clear();
    for (const auto& s : f.segments) c.segments.push_back(parse_segment(s));
  }
  if (!f.alpha.empty()) c.alpha = {f.alpha[0], f.alpha.size() > 1 ? f.alpha[1] : 0.0};
  if (f.s) c.s = *f.s;
  if (f.grid) c.grid = *f.grid;
  if (!f.vector.empty()) c.v = CVector(f.vector.begin(), f.vector.end());
  if (f.dt) c.dt = *f.dt;
  if (f.min_steps) c.min_steps = *f.min_steps;
  if (f.tol) c.tol = *f.tol;
  if (f.expm_tol) c.expm_tol = *f.expm_tol;
  if (f.compare_tol) c.compare_tol = *f.compare_tol;
  if (f.samples) c.samples = *f.samples;
  if (f.seed) c.seed = *f.seed;
  if (f.threads) c.threads = static_cast<unsigned>(*f.threads);
  if (f.expect_slope) c.expect_slope = *f.expect_slope;
  if (f.slope_tol) c.slope_tol = *f.slope_tol;
  if (f.out_dir) c.output_dir = *f.out_dir;
  if (f.csv) c.csv_path = *f.csv;
  if (f.json) c.json_path = *f.json;
  if (f.timing) c.timing = true;
  if (!c.output_dir) c.output_dir = env_output_dir();
  if (!f.segments.empty() && !f.t) {
    c.t = 0.0;
    for (const auto& seg : c.segments) c.t += seg.duration;
  }
  return c;
}

SweepOptions sweep_options(const RunConfig& c) {
  SweepOptions o;
  o.collision_dt = c.dt;
  o.collision_min_steps = c.min_steps;
  o.timing = c.timing;
  o.threads = c.threads;
  o.expm_tol = c.expm_tol;
  return o;
}

struct Outcome {
  std::optional<ConvergenceReport> report;
  ojson extra = ojson::object();
  std::vector<ojson> failures;
};

ojson failure(const std::string& check, const std::string& detail) {
  ojson j;
  j["check"] = check;
  j["detail"] = detail;
  return j;
}

std::string num(double x) { return format_double(x); }

void check_collision_rows(const ConvergenceReport& r, double tol, Outcome& out) {
  for (const auto& row : r.rows) {
    if (!row.E_collision) continue;
    const double diff = std::abs(*row.E_collision - *row.E_semigroup);
    if (diff > tol) {
      out.failures.push_back(failure("collision_agreement", "n=" + num(row.n) + " |E_semigroup - E_collision| = " +
                                                                num(diff) + " > " + num(tol)));
    }
  }
}

void check_non_increasing(const ConvergenceReport& r, const char* column,
                          std::optional<double> ReportRow::*field, Outcome& out) {
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const double prev = (r.rows[i - 1].*field).value_or(0.0);
    const double cur = (r.rows[i].*field).value_or(0.0);
    if (cur > prev + 1e-12) {
      out.failures.push_back(failure(std::string(column) + "_decreasing",
                                     "n=" + num(r.rows[i].n) + " value " + num(cur) + " exceeds " + num(prev)));
    }
  }
}

Outcome do_verify(const RunConfig& c, std::ostream& out) {
  Outcome o;
  o.extra["samples"] = c.samples;
  o.extra["seed"] = c.seed;
  o.extra["tol"] = c.tol;
  o.extra["identities"] = ojson::array();
  for (const auto& r : ito::run_identity_suite(c.samples, c.tol, c.seed)) {
    out << (r.check.passed ? "PASS " : "FAIL ") << r.name << " max_error=" << num(r.check.max_error) << '\n';
    ojson j;
    j["name"] = r.name;
    j["passed"] = r.check.passed;
    j["max_error"] = r.check.max_error;
    j["samples"] = r.check.samples;
    o.extra["identities"].push_back(j);
    if (!r.check.passed) o.failures.push_back(failure("identity", r.name + " max_error=" + num(r.check.max_error)));
  }
  return o;
}

Outcome do_error(const RunConfig& c) {
  Outcome o;
  const SystemModel m = build_model(c.model);
  const CVector v = c.reference_vector(m.d);
  o.report = single_error(c.model, *c.n, c.theta, c.step_function(), v, sweep_options(c));
  check_collision_rows(*o.report, c.compare_tol, o);
  return o;
}

Outcome do_sweep(const RunConfig& c, bool fit) {
  Outcome o;
  const SystemModel m = build_model(c.model);
  const CVector v = c.reference_vector(m.d);
  o.report = sweep_n(c.model, c.theta, c.step_function(), v, c.n_list, sweep_options(c));
  check_collision_rows(*o.report, c.compare_tol, o);
  if (fit) {
    try {
      o.report->fit = estimate_rate(*o.report);
    } catch (const std::domain_error& e) {
      o.failures.push_back(failure("rate_fit", e.what()));
      return o;
    }
    if (c.expect_slope && std::abs(o.report->fit->slope - *c.expect_slope) > c.slope_tol) {
      o.failures.push_back(failure("slope", "slope " + num(o.report->fit->slope) + " differs from " +
                                                num(*c.expect_slope) + " by more than " + num(c.slope_tol)));
    }
  }
  return o;
}

Outcome do_theta_scan(const RunConfig& c) {
  Outcome o;
  const SystemModel m = build_model(c.model);
  const CVector v = c.reference_vector(m.d);
  o.report = theta_scan(c.model, *c.n, c.theta_grid, c.step_function(), v, sweep_options(c));
  check_collision_rows(*o.report, c.compare_tol, o);
  return o;
}

Outcome do_tk_check(const RunConfig& c) {
  Outcome o;
  o.report = tk_check(c.model, c.theta, c.alpha, c.s, c.n_list, c.grid);
  check_non_increasing(*o.report, "generator_norm_at_I", &ReportRow::generator_norm_at_I, o);
  check_non_increasing(*o.report, "sup_deviation", &ReportRow::sup_deviation, o);
  return o;
}

Outcome do_oracle_compare(const RunConfig& c) {
  Outcome o;
  const SystemModel m = build_model(c.model);
  const CVector v = c.reference_vector(m.d);
  OracleComparison cmp = oracle_compare(c.model, c.theta, c.step_function(), v, c.n_list, *c.dt, c.min_steps);
  o.extra["richardson"] = ojson::array();
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    const double ratio = cmp.ratios[i];
    const double diff = cmp.max_abs_diff[i];
    ojson j;
    j["n"] = c.n_list[i];
    j["abs_diff"] = diff;
    j["ratio"] = std::isfinite(ratio) ? ojson(ratio) : ojson(nullptr);
    o.extra["richardson"].push_back(j);
    if (diff > c.compare_tol) {
      o.failures.push_back(failure("collision_agreement", "n=" + num(c.n_list[i]) + " |E_semigroup - E_collision| = " +
                                                              num(diff) + " > " + num(c.compare_tol)));
    }
    if (diff > kRichardsonFloor && !(ratio >= kRichardsonLow && ratio <= kRichardsonHigh)) {
      o.failures.push_back(failure("richardson_ratio", "n=" + num(c.n_list[i]) + " ratio " + num(ratio) +
                                                           " outside [1.7, 2.3]"));
    }
  }
  o.report = std::move(cmp.report);
  return o;
}

int dispatch(const std::string& command, const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate(c, command);
  Outcome o;
  if (command == "verify") {
    o = do_verify(c, out);
  } else if (command == "error") {
    o = do_error(c);
  } else if (command == "sweep") {
    o = do_sweep(c, false);
  } else if (command == "rate") {
    o = do_sweep(c, true);
  } else if (command == "theta-scan") {
    o = do_theta_scan(c);
  } else if (command == "tk-check") {
    o = do_tk_check(c);
  } else {
    o = do_oracle_compare(c);
  }

  auto csv_path = c.csv_path;
  auto json_path = c.json_path;
  if (c.output_dir) {
    if (!csv_path && o.report) csv_path = *c.output_dir / (command + ".csv");
    if (!json_path) json_path = *c.output_dir / (command + ".json");
  }

  if (o.report) {
    const std::string csv = to_csv(*o.report);
    if (csv_path) {
      write_text(*csv_path, csv);
    } else {
      out << csv;
    }
    if (o.report->fit) err << "slope " << num(o.report->fit->slope) << " intercept " << num(o.report->fit->intercept) << '\n';
    for (const auto& w : o.report->warnings) err << "WARN " << w << '\n';
  }
  for (const auto& f : o.failures) err << "FAIL " << f.dump() << '\n';

  if (json_path) {
    ojson j;
    j["command"] = command;
    j["kernel"] = kernels::active().isa == kernels::Isa::avx2 ? "avx2" : "scalar";
    if (o.report) j.update(to_json(*o.report));
    for (const auto& [key, value] : o.extra.items()) j[key] = value;
    j["failures"] = o.failures;
    write_text(*json_path, j.dump(2) + "\n");
  }
  return o.failures.empty() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squeezed-noise limit: numerical verification toolkit", "sqz"};
  app.require_subcommand(1, 1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "symbolic identity suite"},
      {"error", "error functional at a single n"},
      {"sweep", "error functional over an n-list"},
      {"rate", "sweep plus log-log slope fit"},
      {"theta-scan", "error functional over a phase grid"},
      {"tk-check", "generator norm at I and sup deviation per n"},
      {"oracle-compare", "semigroup against the collision oracle at dt and dt/2"},
  };
  for (const auto& [name, help] : commands) add_options(app.add_subcommand(name, help), flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(command, resolve(flags), out, err);
  } catch (const DegeneratePhaseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "FAIL " << ojson({{"check", "runtime"}, {"detail", e.what()}}).dump() << '\n';
    return kExitCheckFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sqz::cli
