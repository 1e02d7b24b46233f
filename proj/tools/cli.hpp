#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ca::cli {

/// Exit statuses of the `ca` tool.
enum Exit : int { kOk = 0, kCheckFailure = 1, kInputError = 2, kResourceCap = 3 };

/// Runs the tool on args (without the program name), writing results to out
/// and diagnostics to err.  Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ca::cli
