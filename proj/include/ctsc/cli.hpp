#pragma once

#include <iosfwd>

namespace ctsc {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitIo = 3 };

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctsc
