#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "seqmc/boundaries.hpp"
#include "seqmc/parallel.hpp"
#include "seqmc/spending.hpp"
#include "seqmc/types.hpp"

namespace seqmc {

class SampleSource;

enum class Procedure { csm, simctest, besag_clifford };

struct TruncatedConfig {
  Procedure procedure = Procedure::csm;
  Step cap = 13000;
  double alpha = 0.05;
  double epsilon = 0.05;                   // unused by Besag–Clifford
  std::optional<SpendingSequence> spending; // simctest only; default(k=1000) if absent
  Step h = 10;                             // Besag–Clifford exceedance target

  void validate() const;
};

/// Boundaries up to the cap for the csm / simctest procedures.
BoundaryPair truncated_boundaries(const TruncatedConfig& cfg);

/// Runs the base rule up to the cap and forces a decision there
/// (see forced_rejects). Besag–Clifford stops at the h-th exceedance with
/// estimate h/n; at the cap its estimate is (S+1)/(N+1).
/// Throws SourceExhausted if the source ends before the procedure does.
RunResult truncated_run(SampleSource& source, const TruncatedConfig& cfg);
/// Same, reusing precomputed boundaries for csm / simctest.
RunResult truncated_run(SampleSource& source, const TruncatedConfig& cfg, const BoundaryPair& bounds);

struct RiskPoint {
  double p = 0.0;
  double risk = 0.0;

  friend bool operator==(const RiskPoint&, const RiskPoint&) = default;
};

/// Exact resampling risk of the truncated procedure at each p.
std::vector<RiskPoint> truncated_risk_curve(const TruncatedConfig& cfg, std::span<const double> p_grid,
                                            Execution exec = Execution::parallel);

/// Monte Carlo frequencies of wrong decisions; run r at grid point i uses
/// seed derive_seed(derive_seed(seed, i), r), so results do not depend on scheduling.
std::vector<RiskPoint> truncated_risk_curve_mc(const TruncatedConfig& cfg,
                                               std::span<const double> p_grid, std::int64_t runs,
                                               std::uint64_t seed,
                                               Execution exec = Execution::parallel);

/// Exact Besag–Clifford risk by DP over the exceedance count (< h).
double besag_clifford_risk(double p, double alpha, Step h, Step cap);

/// Risk-curve CSV: header `p,risk`, one row per grid point.
void write_risk_curve(std::span<const RiskPoint> curve, std::ostream& out);
std::vector<RiskPoint> read_risk_curve(std::istream& in);
std::vector<RiskPoint> read_risk_curve(const std::filesystem::path& path);

}  // namespace seqmc
