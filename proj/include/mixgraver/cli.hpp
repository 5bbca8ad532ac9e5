// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixgraver {

/// Exit codes shared by every verb.
enum ExitCode : int {
  exit_solved = 0,
  exit_infeasible = 1,
  exit_cap_exceeded = 2,
  exit_input_error = 3,
  exit_internal_error = 4,
};

/// Runs one command line (without the program name). Instance text is read from `in` when the
/// input path is "-" or omitted.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mixgraver
