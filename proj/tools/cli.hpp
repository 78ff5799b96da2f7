#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqdiv::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitBestEffort = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and normalization warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqdiv::cli
