#pragma once

#include <iosfwd>

namespace papf::cli {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kOk = 0,          ///< every plan ended in Success
  kUsage = 1,       ///< bad flags, unreadable input, unwritable output
  kPlanFailed = 2,  ///< some plan ended in LocalMinimum, Collision or StepBudgetExhausted
};

/// Entry point of the `papf` tool. Subcommands: run, compare,
/// export-scenario, export-profile.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace papf::cli
