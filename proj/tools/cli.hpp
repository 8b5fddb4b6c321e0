#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hustab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotSatisfied = 1;
inline constexpr int kExitUsage = 2;

/// Runs the hustab command line. args excludes the program name.
/// Returns 0 on satisfied or generation success, 1 on unsatisfied or
/// inconclusive, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hustab::cli
