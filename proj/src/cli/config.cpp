// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace sqz::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double real_of(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

cplx complex_of(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(where + ": expected a number or an [re, im] pair");
}

std::vector<double> reals_of(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(real_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

CVector vector_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a non-empty array");
  CVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

CMatrix matrix_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ConfigError(where + ": ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = complex_of(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

std::size_t count_of(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError(where + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

void parse_model(const json& j, ModelSpec& m) {
  reject_unknown(j, "model", {"name", "kappa", "omega", "N", "scalar_L", "S", "L", "H", "zero_L"});
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("model.name: expected a string");
    m.name = j["name"].get<std::string>();
  }
  if (j.contains("kappa")) m.kappa = real_of(j["kappa"], "model.kappa");
  if (j.contains("omega")) m.omega = real_of(j["omega"], "model.omega");
  if (j.contains("N")) m.N = count_of(j["N"], "model.N");
  if (j.contains("scalar_L")) m.scalar_L = complex_of(j["scalar_L"], "model.scalar_L");
  if (j.contains("S")) m.S = matrix_of(j["S"], "model.S");
  if (j.contains("L")) m.L = matrix_of(j["L"], "model.L");
  if (j.contains("H")) m.H = matrix_of(j["H"], "model.H");
  if (j.contains("zero_L")) {
    if (!j["zero_L"].is_boolean()) throw ConfigError("model.zero_L: expected a boolean");
    m.zero_L = j["zero_L"].get<bool>();
  }
}

void parse_squeeze(const json& j, RunConfig& c) {
  reject_unknown(j, "squeeze", {"n", "theta", "n_list", "theta_grid"});
  if (j.contains("n")) c.n = real_of(j["n"], "squeeze.n");
  if (j.contains("theta")) c.theta = real_of(j["theta"], "squeeze.theta");
  if (j.contains("n_list")) c.n_list = reals_of(j["n_list"], "squeeze.n_list");
  if (j.contains("theta_grid")) c.theta_grid = reals_of(j["theta_grid"], "squeeze.theta_grid");
}

void parse_drive(const json& j, RunConfig& c) {
  reject_unknown(j, "drive", {"t", "segments", "alpha", "s", "grid"});
  if (j.contains("t")) c.t = real_of(j["t"], "drive.t");
  if (j.contains("segments")) {
    const json& segs = j["segments"];
    if (!segs.is_array()) throw ConfigError("drive.segments: expected an array");
    c.segments.clear();
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const std::string where = "drive.segments[" + std::to_string(i) + "]";
      reject_unknown(segs[i], where, {"duration", "alpha"});
      if (!segs[i].contains("duration")) throw ConfigError(where + ": missing duration");
      StepSegment seg;
      seg.duration = real_of(segs[i]["duration"], where + ".duration");
      if (segs[i].contains("alpha")) seg.alpha = complex_of(segs[i]["alpha"], where + ".alpha");
      c.segments.push_back(seg);
    }
    if (!j.contains("t")) {
      c.t = 0.0;
      for (const auto& seg : c.segments) c.t += seg.duration;
    }
  }
  if (j.contains("alpha")) c.alpha = complex_of(j["alpha"], "drive.alpha");
  if (j.contains("s")) c.s = real_of(j["s"], "drive.s");
  if (j.contains("grid")) c.grid = count_of(j["grid"], "drive.grid");
}

void parse_numerics(const json& j, RunConfig& c) {
  reject_unknown(j, "numerics", {"dt", "min_steps", "tol", "expm_tol", "compare_tol", "samples",
                                 "seed", "threads", "expect_slope", "slope_tol"});
  if (j.contains("dt")) c.dt = real_of(j["dt"], "numerics.dt");
  if (j.contains("min_steps")) c.min_steps = count_of(j["min_steps"], "numerics.min_steps");
  if (j.contains("tol")) c.tol = real_of(j["tol"], "numerics.tol");
  if (j.contains("expm_tol")) c.expm_tol = real_of(j["expm_tol"], "numerics.expm_tol");
  if (j.contains("compare_tol")) c.compare_tol = real_of(j["compare_tol"], "numerics.compare_tol");
  if (j.contains("samples")) c.samples = count_of(j["samples"], "numerics.samples");
  if (j.contains("seed")) c.seed = count_of(j["seed"], "numerics.seed");
  if (j.contains("threads")) c.threads = static_cast<unsigned>(count_of(j["threads"], "numerics.threads"));
  if (j.contains("expect_slope")) c.expect_slope = real_of(j["expect_slope"], "numerics.expect_slope");
  if (j.contains("slope_tol")) c.slope_tol = real_of(j["slope_tol"], "numerics.slope_tol");
}

void parse_output(const json& j, RunConfig& c) {
  reject_unknown(j, "output", {"dir", "csv", "json", "timing"});
  auto path_of = [&](const char* key) {
    if (!j[key].is_string()) throw ConfigError(std::string("output.") + key + ": expected a string");
    return std::filesystem::path(j[key].get<std::string>());
  };
  if (j.contains("dir")) c.output_dir = path_of("dir");
  if (j.contains("csv")) c.csv_path = path_of("csv");
  if (j.contains("json")) c.json_path = path_of("json");
  if (j.contains("timing")) {
    if (!j["timing"].is_boolean()) throw ConfigError("output.timing: expected a boolean");
    c.timing = j["timing"].get<bool>();
  }
}

void require_n_list(const RunConfig& c, const std::string& command) {
  if (c.n_list.size() < 2) throw ConfigError(command + ": needs an n-list with at least 2 entries");
  for (std::size_t i = 1; i < c.n_list.size(); ++i) {
    if (!(c.n_list[i] > c.n_list[i - 1])) throw ConfigError(command + ": n-list must be strictly increasing");
  }
  for (double n : c.n_list) make_squeeze_params(n, c.theta);
}

}  // namespace

CVector RunConfig::reference_vector(std::size_t d) const {
  if (!v) return default_vector(model, d);
  if (v->size() != d) {
    throw ConfigError("vector has length " + std::to_string(v->size()) + ", system dimension is " +
                      std::to_string(d));
  }
  return *v;
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, "config", {"model", "squeeze", "drive", "vector", "numerics", "output"});
  RunConfig c;
  if (j.contains("model")) parse_model(j["model"], c.model);
  if (j.contains("squeeze")) parse_squeeze(j["squeeze"], c);
  if (j.contains("drive")) parse_drive(j["drive"], c);
  if (j.contains("vector")) c.v = vector_of(j["vector"], "vector");
  if (j.contains("numerics")) parse_numerics(j["numerics"], c);
  if (j.contains("output")) parse_output(j["output"], c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& c, const std::string& command) {
  if (!(c.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (!(c.expm_tol >= kExpmMinTol && c.expm_tol <= kExpmMaxTol)) {
    throw ConfigError("expm_tol must lie in [1e-15, 1e-6]");
  }
  if (command == "verify") {
    if (c.samples == 0) throw ConfigError("verify: samples must be >= 1");
    return;
  }
  const SystemModel m = build_model(c.model);
  const StepFunction f = c.step_function();
  const CVector v = c.reference_vector(m.d);
  if (std::abs(norm2(v) - 1.0) > 1e-9) throw ConfigError("vector must have unit norm");
  if (c.dt) {
    if (!(*c.dt > 0.0)) throw ConfigError("dt must be > 0");
    CollisionConfig cc;
    cc.dt = *c.dt;
    cc.min_steps_per_segment = c.min_steps;
    snap_segments(f, cc);
    if ((m.S - CMatrix::identity(m.d)).max_abs() > kModelTol) {
      throw ConfigError("collision oracle supports only S = I");
    }
  }
  if (command == "error") {
    if (!c.n) throw ConfigError("error: needs n");
    make_squeeze_params(*c.n, c.theta);
  } else if (command == "sweep" || command == "rate") {
    require_n_list(c, command);
    if (command == "rate" && c.n_list.size() < 4) throw ConfigError("rate: needs at least 4 n values");
  } else if (command == "theta-scan") {
    if (!c.n) throw ConfigError("theta-scan: needs n");
    if (c.theta_grid.empty()) throw ConfigError("theta-scan: needs a theta grid");
    for (double th : c.theta_grid) {
      if (!(std::abs(th) <= std::acos(-1.0) - kThetaGuardBand)) {
        throw ConfigError("theta-scan: grid point within 0.05 of +-pi");
      }
      make_squeeze_params(*c.n, th);
    }
  } else if (command == "tk-check") {
    require_n_list(c, command);
    if (!(c.s > 0.0)) throw ConfigError("tk-check: s must be > 0");
    if (c.grid < 2) throw ConfigError("tk-check: grid must be >= 2");
  } else if (command == "oracle-compare") {
    require_n_list(c, command);
    if (!c.dt) throw ConfigError("oracle-compare: needs dt");
  }
}

std::optional<std::filesystem::path> env_output_dir() {
  const char* dir = std::getenv("SQZ_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

}  // namespace sqz::cli
