// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adascale::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 2,
  exit_iter_limit = 3,
  exit_breakdown = 4,
  exit_check_failed = 5,
};

/// Runs the command line `args` (without the program name). Everything the
/// user should see goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adascale::cli
