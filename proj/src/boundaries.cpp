#include "seqmc/boundaries.hpp"

#include <string>

#include "seqmc/errors.hpp"
#include "seqmc/sources.hpp"

namespace seqmc {

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::reject_null: return "reject_null";
    case Decision::accept_null: return "accept_null";
    case Decision::no_decision: return "no_decision";
  }
  return "?";
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::lower: return "lower";
    case StopReason::upper: return "upper";
    case StopReason::truncation: return "truncation";
  }
  return "?";
}

void TestConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0,1)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0,1)");
  if (max_steps && *max_steps < 1) throw PreconditionError("max_steps must be >= 1");
}

BoundaryPair::BoundaryPair(BoundaryMeta meta, std::vector<Step> lower, std::vector<Step> upper)
    : meta_(std::move(meta)), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw PreconditionError("boundary arrays differ in length");
  }
}

StepBounds BoundaryPair::at(Step n) const {
  if (n < 1) throw PreconditionError("boundary step must be >= 1");
  if (n > n_max()) throw BoundaryExhausted(n_max(), n);
  const auto i = static_cast<std::size_t>(n - 1);
  return {lower_[i], upper_[i]};
}

BoundaryPair BoundaryPair::prefix(Step n) const {
  if (n < 0 || n > n_max()) throw BoundaryExhausted(n_max(), n);
  const auto len = static_cast<std::ptrdiff_t>(n);
  return BoundaryPair(meta_, {lower_.begin(), lower_.begin() + len}, {upper_.begin(), upper_.begin() + len});
}

RunResult boundary_run(SampleSource& source, BoundaryProvider& bounds, std::optional<Step> max_steps) {
  Step s = 0;
  for (Step n = 1;; ++n) {
    s += source.next();
    const StepBounds b = bounds.at(n);
    const double est = static_cast<double>(s) / static_cast<double>(n);
    if (s >= b.upper) return {n, s, est, Decision::accept_null, StopReason::upper};
    if (s <= b.lower) return {n, s, est, Decision::reject_null, StopReason::lower};
    if (max_steps && n >= *max_steps) return {n, s, est, Decision::no_decision, StopReason::truncation};
  }
}

}  // namespace seqmc
