#include "seqmc/parallel.hpp"

#include <cmath>

namespace seqmc {

BatchSummary summarize(std::span<const RunResult> results) {
  BatchSummary out;
  out.runs = static_cast<std::int64_t>(results.size());
  if (results.empty()) return out;
  double sum = 0.0, sum_est = 0.0;
  for (const auto& r : results) {
    switch (r.decision) {
      case Decision::reject_null: ++out.rejected; break;
      case Decision::accept_null: ++out.accepted; break;
      case Decision::no_decision: ++out.undecided; break;
    }
    sum += static_cast<double>(r.steps);
    sum_est += r.estimate;
  }
  const double n = static_cast<double>(results.size());
  out.mean_steps = sum / n;
  out.mean_estimate = sum_est / n;
  double ss = 0.0;
  for (const auto& r : results) {
    const double d = static_cast<double>(r.steps) - out.mean_steps;
    ss += d * d;
  }
  out.sd_steps = results.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return out;
}

}  // namespace seqmc
