#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubesum {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRefused = 2;  // arithmetic range or memory budget

/// Runs one `cubesum` command line. args excludes the program name. Reports
/// go to `out` (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubesum
