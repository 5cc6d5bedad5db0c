#pragma once

#include <iosfwd>

namespace opx::cli {

/// Parses argv, runs the command and writes the report to out (diagnostics to
/// err). Returns 0 when every check passes, 1 on a failed check, 2 on a usage
/// or validation error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace opx::cli
