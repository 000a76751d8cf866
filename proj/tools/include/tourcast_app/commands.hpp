#pragma once

#include <iosfwd>

namespace tourcast::app {

enum ExitCode : int { kOk = 0, kUsageError = 1, kDataError = 2 };

/// Entry point of the `tourcast` command line. Messages go to `out` and `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tourcast::app
