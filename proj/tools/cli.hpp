#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mxnh::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// CSV goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mxnh::cli
