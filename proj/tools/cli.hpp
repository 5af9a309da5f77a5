#pragma once

#include <iosfwd>

namespace harnack::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_infeasible = 2,
  exit_invalid = 3,
  exit_numerical = 4,
};

/// Runs one command line. Reports go to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace harnack::cli
