#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specconvex::cli {

/// Exit codes: 0 success, 1 mathematical rejection (outside, infeasible,
/// failed suite), 2 bad input or an instance above the size cap.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitInput = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specconvex::cli
