// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "sqz/ito/algebra.hpp"

namespace sqz::ito {

struct IdentityResult {
  std::string name;
  IdentityCheck check;
};

/// Every algebraic identity the toolkit relies on, each tested at `samples`
/// random (n, theta, alpha) points with absolute coefficient tolerance `tol`.
std::vector<IdentityResult> run_identity_suite(std::size_t samples, double tol, std::uint64_t seed);

// Individual per-sample error functions, exposed for tests.
double squeezed_table_error(const SampleParams& sp);
double z_table_error(const SampleParams& sp);
double squeezed_qsde_rewrite_error(const SampleParams& sp);
double z_qsde_rewrite_error(const SampleParams& sp);
double generator_identity_error(const SampleParams& sp);
double generator_closed_form_error(const SampleParams& sp);

}  // namespace sqz::ito
