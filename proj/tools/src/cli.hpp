#pragma once

#include <iosfwd>

namespace cslab::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericError = 3, kInvariantError = 4 };

/// Parses argv and runs one subcommand. Reports go to `out` (or the
/// --output file), diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cslab::cli
