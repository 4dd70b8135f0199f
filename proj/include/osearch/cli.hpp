#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace osearch::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kUsage = 2,
    kBudget = 3,
};

/// Runs one invocation; args excludes the program name. Reports go to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace osearch::cli
