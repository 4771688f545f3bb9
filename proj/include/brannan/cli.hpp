#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brannan::cli {

// Command-line frontend. Returns the process exit code:
//   0  all margins >= -violation tolerance,
//   1  at least one violation or failed evaluation,
//   2  usage error.
// Timing goes to the error stream so that identical argv produce
// byte-identical data output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brannan::cli
