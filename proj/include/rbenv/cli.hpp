#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbenv {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2 };

/// Runs one invocation; args excludes the program name. Reports go to out,
/// diagnostics to err.
int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbenv
