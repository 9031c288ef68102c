#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace episig {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;   // validation, domain and usage errors
inline constexpr int kExitParse = 3;     // malformed input documents
inline constexpr int kExitMismatch = 4;  // verification or oracle disagreement

/// Grids below this size get a coarse-resolution warning from `verify`.
inline constexpr int kCoarseGrid = 101;

/// Runs the command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace episig
