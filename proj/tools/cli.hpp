#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqmc::cli {

/// Exit codes: 0 decided / success, 1 error, 2 run ended without a decision.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoDecision = 2;

/// Runs the command line (args excludes the program name). Tabular output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqmc::cli
