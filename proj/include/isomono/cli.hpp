#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isomono::cli {

enum ExitCode : int {
  ok = 0,
  property_fails = 1,
  unsupported = 2,
  not_found = 3,
  malformed = 4,
};

/// Runs one command line (without the program name). The report goes to out,
/// diagnostics to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isomono::cli
