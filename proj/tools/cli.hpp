#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clouds::cli {

inline constexpr int kOk = 0;
/// Infeasible model or a violation was found.
inline constexpr int kFinding = 1;
/// Bad command line, unreadable file or invalid model.
inline constexpr int kUsage = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clouds::cli
