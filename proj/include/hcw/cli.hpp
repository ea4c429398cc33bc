#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcw {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInvalidArguments = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Entry point of the `hcw` command-line tool. `args` excludes the program
/// name. Results go to `out` unless --output names a file; failures print a
/// one-line JSON object {"error", "message", "exit_code"} to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcw
