// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqz/cli/run.hpp"

int main(int argc, char** argv) { return sqz::cli::run(argc, argv); }
