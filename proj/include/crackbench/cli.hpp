// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace crackbench {

/// Entry point behind the crackbench binary; exposed so tests can drive
/// subcommands in-process. Exit codes: 0 success, 1 usage/config error,
/// 2 data error, 3 internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace crackbench
