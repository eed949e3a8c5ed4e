// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqz/experiments.hpp"

namespace sqz::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a subcommand may need. Loaded from a JSON file (complex numbers
/// as [re, im] or plain reals), then overridden by command-line flags.
struct RunConfig {
  ModelSpec model;

  std::optional<double> n;
  std::vector<double> n_list;
  double theta = 0.0;
  std::vector<double> theta_grid;

  double t = 1.0;
  std::vector<StepSegment> segments;  // empty: f = 0 on [0, t]
  std::optional<CVector> v;

  cplx alpha = 0.0;  // tk-check amplitude
  double s = 1.0;    // tk-check horizon
  std::size_t grid = 101;

  std::optional<double> dt;
  std::size_t min_steps = 10;
  double tol = 1e-10;
  double expm_tol = kDefaultExpmTol;
  double compare_tol = 5e-3;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<double> expect_slope;
  double slope_tol = 0.05;

  std::optional<std::filesystem::path> output_dir;
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> json_path;
  bool timing = false;

  StepFunction step_function() const { return StepFunction(segments, t); }
  /// v from the config, or the model's default reference vector, normalized check included.
  CVector reference_vector(std::size_t d) const;
};

/// Parses a JSON document; unknown keys at any level raise ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Checks the module preconditions a subcommand relies on before running it.
void validate(const RunConfig& cfg, const std::string& command);

/// Default output directory from SQZ_OUTPUT_DIR, if set.
std::optional<std::filesystem::path> env_output_dir();

}  // namespace sqz::cli
