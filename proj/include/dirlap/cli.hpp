#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirlap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitMismatch = 4;

/// Runs one command line (argv[0] is the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with the arguments only (no program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirlap::cli
