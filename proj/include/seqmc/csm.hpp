#pragma once

#include <vector>

#include "seqmc/boundaries.hpp"
#include "seqmc/types.hpp"

namespace seqmc {

class SampleSource;

/// True iff (n+1) b(n, alpha, s) <= epsilon, i.e. alpha has left the
/// confidence set at step n. Evaluated in log space.
/// Throws PreconditionError unless n >= 1 and 0 <= s <= n.
bool csm_should_stop(Step n, Step s, const TestConfig& cfg);

/// Implied CSM boundaries computed one step at a time:
///   u_n = max{k : (n+1) b(n,alpha,k) > eps} + 1
///   l_n = min{k : (n+1) b(n,alpha,k) > eps} - 1
/// Each step starts its search from the previous step's boundaries, so the
/// total cost is linear in n plus the boundary drift. Throws
/// InvariantViolation if either boundary ever decreases.
class CsmBoundaryGenerator final : public BoundaryProvider {
 public:
  explicit CsmBoundaryGenerator(const TestConfig& cfg);

  StepBounds at(Step n) override;
  void extend_to(Step n);
  Step computed() const noexcept { return static_cast<Step>(lower_.size()); }

  /// Table of the first n_max steps (extending as needed).
  BoundaryPair table(Step n_max);

 private:
  TestConfig cfg_;
  double log_eps_;
  std::vector<Step> lower_;
  std::vector<Step> upper_;
};

/// Implied boundaries for steps 1..n_max. Throws PreconditionError if n_max < 1.
BoundaryPair csm_boundaries(Step n_max, const TestConfig& cfg);

/// Samples until csm_should_stop fires or cfg.max_steps is reached.
/// Stop: estimate S/n, accept_null when S/n > alpha (upper), else reject_null.
/// Cap: no_decision with estimate S_N/N.
/// Throws SourceExhausted if an open-ended run drains a finite source.
RunResult csm_run(SampleSource& source, const TestConfig& cfg);

}  // namespace seqmc
