// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sqz/experiments.hpp"

namespace sqz::cli {

inline constexpr std::string_view kCsvHeader =
    "n,theta,t,dt,E_semigroup,E_collision,sup_deviation,generator_norm_at_I,tail_mass,wall_ms";

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// One line per row in kCsvHeader order; missing values are empty fields.
std::string to_csv(const ConvergenceReport& report);

nlohmann::ordered_json row_to_json(const ReportRow& row);
nlohmann::ordered_json to_json(const ConvergenceReport& report);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace sqz::cli
