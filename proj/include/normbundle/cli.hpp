#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nb {

/// Runs one command line (without the program name). Results go to `out` (or
/// to --out), errors go to `err` as a JSON error object. Returns the exit code:
/// 0 ok, 2 usage, 3 validation, 4 computation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nb
