#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rumorlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs the command line `args` (args[0] is the program name), writing the
/// report to `out` (or the --out file) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rumorlab::cli
