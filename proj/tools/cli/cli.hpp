#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tstab::cli {

// Exit codes of the tstab tool.
enum ExitCode : int {
  kPass = 0,
  kPropertyFailure = 1,
  kParseFailure = 2,
  kPreconditionFailure = 3,
};

// Runs the tool on `args` (program name excluded). Reports go to `out`
// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tstab::cli
