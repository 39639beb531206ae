#pragma once

#include <iostream>

namespace schurchan {

/// Exit codes of run().
enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

/// Parses argv and dispatches a subcommand: classify, simulate, sample,
/// verify, estimate, apps. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace schurchan
