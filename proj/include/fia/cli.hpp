#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fia::cli {

/// Exit codes: 0 success or confirmed, 1 property refuted or map rejected,
/// 2 usage, parse or I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitError = 2;

/// Runs the `fia` command line. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fia::cli
