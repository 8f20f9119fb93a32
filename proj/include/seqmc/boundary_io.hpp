#pragma once

#include <filesystem>
#include <iosfwd>

#include "seqmc/boundaries.hpp"

namespace seqmc {

// Line-oriented cache format:
//   #version=1
//   #method=simctest|csm
//   #alpha=<decimal>
//   #epsilon=<decimal>
//   #spending=<descriptor>
//   n,L_n,U_n            (one per step, n = 1, 2, ...)
// Every line ends in '\n'. Integers are plain decimal with no padding or '+'.

void save_boundaries(const BoundaryPair& bounds, std::ostream& out);
void save_boundaries(const BoundaryPair& bounds, const std::filesystem::path& path);

/// Throws ParseError (with line number), VersionMismatch, or
/// InvariantViolation. Validation: L_n < U_n, -1 <= L_n, U_n <= n+1,
/// row 1 equal to the boundaries implied by the header, and
/// non-decreasing boundaries except for truncated spending.
BoundaryPair load_boundaries(std::istream& in);
BoundaryPair load_boundaries(const std::filesystem::path& path);

/// The structural checks load_boundaries applies, usable on any table.
void validate_boundaries(const BoundaryPair& bounds);

}  // namespace seqmc
