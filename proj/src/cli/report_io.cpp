// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/cli/report_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace sqz::cli {
namespace {

void field(std::string& out, const std::optional<double>& x) {
  out += ',';
  if (x) out += format_double(*x);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : report.rows) {
    out += format_double(r.n);
    out += ',' + format_double(r.theta);
    out += ',' + format_double(r.t);
    field(out, r.dt);
    field(out, r.E_semigroup);
    field(out, r.E_collision);
    field(out, r.sup_deviation);
    field(out, r.generator_norm_at_I);
    field(out, r.tail_mass);
    field(out, r.wall_ms);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json row_to_json(const ReportRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["theta"] = r.theta;
  j["t"] = r.t;
  j["s2"] = r.s2;
  auto put = [&](const char* key, const std::optional<double>& x) {
    j[key] = x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
  };
  put("dt", r.dt);
  put("E_semigroup", r.E_semigroup);
  put("E_collision", r.E_collision);
  put("sup_deviation", r.sup_deviation);
  put("generator_norm_at_I", r.generator_norm_at_I);
  put("tail_mass", r.tail_mass);
  put("wall_ms", r.wall_ms);
  return j;
}

nlohmann::ordered_json to_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["config"] = report.config;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) j["rows"].push_back(row_to_json(r));
  if (report.fit) {
    j["fit"] = {{"slope", report.fit->slope}, {"intercept", report.fit->intercept}};
  } else {
    j["fit"] = nullptr;
  }
  j["warnings"] = report.warnings;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace sqz::cli
