#pragma once

#include <optional>
#include <vector>

#include "seqmc/boundaries.hpp"
#include "seqmc/risk.hpp"
#include "seqmc/spending.hpp"
#include "seqmc/types.hpp"

namespace seqmc {

class SampleSource;

/// SIMCTEST boundary recursion fused with the exact law of S_n under p = alpha.
///
/// At step n the pre-stop distribution of S_n (paths that have not stopped
/// before n) is known. U_n is the smallest j with
///   P(no stop before n, S_n >= j) + P(upper hit before n) <= eps_n,
/// and L_n the largest j with the mirrored lower condition. Mass beyond the
/// new boundaries is absorbed, so the running hitting masses are exactly the
/// quantities the recursion needs.
class SimctestBoundaryGenerator final : public BoundaryProvider {
 public:
  /// Throws PreconditionError if cfg is invalid or seq.epsilon != cfg.epsilon.
  SimctestBoundaryGenerator(const TestConfig& cfg, const SpendingSequence& seq);

  /// Extends in geometric chunks (doubling the horizon) when n is new.
  StepBounds at(Step n) override;
  void extend_to(Step n);
  Step computed() const noexcept { return static_cast<Step>(lower_.size()); }

  /// Cumulative boundary-hitting mass under p = alpha after computed() steps.
  double cumulative_upper() const noexcept { return state_.stopped_upper; }
  double cumulative_lower() const noexcept { return state_.stopped_lower; }
  const StateDistribution& state() const noexcept { return state_; }

  BoundaryPair table(Step n_max);

 private:
  void step();

  TestConfig cfg_;
  SpendingSequence seq_;
  StateDistribution state_;
  std::vector<Step> lower_;
  std::vector<Step> upper_;
};

struct SimctestBoundaries {
  BoundaryPair bounds;
  double cumulative_upper = 0.0;  // at n_max, under p = alpha
  double cumulative_lower = 0.0;
};

/// Throws PreconditionError for n_max < 1 or a spending/config epsilon mismatch.
SimctestBoundaries simctest_boundaries(Step n_max, const TestConfig& cfg,
                                       const SpendingSequence& seq);

/// Run against a precomputed table. Throws BoundaryExhausted (naming the
/// required length) if the run outlives the table and no smaller cap applies.
RunResult simctest_run(SampleSource& source, const BoundaryPair& bounds,
                       std::optional<Step> max_steps = std::nullopt);

/// Run with boundaries computed lazily as the run proceeds.
RunResult simctest_run(SampleSource& source, const TestConfig& cfg, const SpendingSequence& seq);

}  // namespace seqmc
