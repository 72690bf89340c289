#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zsindex {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;

// Runs one command line (without the program name), writing results to `out`
// and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace zsindex
