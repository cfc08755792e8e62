#pragma once

#include <iosfwd>

namespace ldk::cli {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2 };

/// Parses arguments, dispatches the subcommand and writes its outputs.
/// Summary lines go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldk::cli
