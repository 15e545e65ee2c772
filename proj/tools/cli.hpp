#pragma once

#include <ostream>

namespace kapranov::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kPropertyViolated = 2 };

/// Runs the `kapranov` command line. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kapranov::cli
