#include "seqmc/csm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqmc/binomial.hpp"
#include "seqmc/errors.hpp"
#include "seqmc/format.hpp"
#include "seqmc/sources.hpp"

namespace seqmc {
namespace {

// log((n+1) b(n, alpha, s)) > log(eps): alpha still inside the confidence set.
bool inside(Step n, Step s, double alpha, double log_eps) {
  return std::log(static_cast<double>(n + 1)) + log_binom_pmf(n, alpha, s) > log_eps;
}

}  // namespace

bool csm_should_stop(Step n, Step s, const TestConfig& cfg) {
  if (n < 1 || s < 0 || s > n) {
    throw PreconditionError("csm_should_stop: need n >= 1 and 0 <= s <= n, got n=" + std::to_string(n) +
                            " s=" + std::to_string(s));
  }
  return !inside(n, s, cfg.alpha, std::log(cfg.epsilon));
}

CsmBoundaryGenerator::CsmBoundaryGenerator(const TestConfig& cfg) : cfg_(cfg), log_eps_(std::log(cfg.epsilon)) {
  cfg_.validate();
}

void CsmBoundaryGenerator::extend_to(Step target) {
  const double a = cfg_.alpha;
  lower_.reserve(static_cast<std::size_t>(std::max<Step>(target, 0)));
  upper_.reserve(static_cast<std::size_t>(std::max<Step>(target, 0)));
  for (Step n = computed() + 1; n <= target; ++n) {
    // The mode floor((n+1) alpha) always lies inside: its pmf is >= 1/(n+1).
    const Step mode = std::min<Step>(n, static_cast<Step>(std::floor(static_cast<double>(n + 1) * a)));
    const Step prev_hi = upper_.empty() ? 0 : upper_.back() - 1;
    const Step prev_lo = lower_.empty() ? 0 : lower_.back() + 1;

    Step hi = std::max(prev_hi, mode);
    if (inside(n, hi, a, log_eps_)) {
      while (hi < n && inside(n, hi + 1, a, log_eps_)) ++hi;
    } else {
      while (!inside(n, hi - 1, a, log_eps_)) --hi;
      --hi;
    }

    Step lo = std::clamp<Step>(prev_lo, 0, mode);
    if (inside(n, lo, a, log_eps_)) {
      while (lo > 0 && inside(n, lo - 1, a, log_eps_)) --lo;
    } else {
      while (!inside(n, lo + 1, a, log_eps_)) ++lo;
      ++lo;
    }

    const Step u = hi + 1;
    const Step l = lo - 1;
    if (!upper_.empty() && (u < upper_.back() || l < lower_.back())) {
      throw InvariantViolation("csm boundaries decreased at n=" + std::to_string(n));
    }
    lower_.push_back(l);
    upper_.push_back(u);
  }
}

StepBounds CsmBoundaryGenerator::at(Step n) {
  if (n < 1) throw PreconditionError("boundary step must be >= 1");
  if (n > computed()) extend_to(std::max(n, 2 * computed()));
  const auto i = static_cast<std::size_t>(n - 1);
  return {lower_[i], upper_[i]};
}

BoundaryPair CsmBoundaryGenerator::table(Step n_max) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  extend_to(n_max);
  BoundaryMeta meta{kBoundaryFormatVersion, "csm", cfg_.alpha, cfg_.epsilon, "none"};
  const auto len = static_cast<std::ptrdiff_t>(n_max);
  return BoundaryPair(std::move(meta), {lower_.begin(), lower_.begin() + len},
                      {upper_.begin(), upper_.begin() + len});
}

BoundaryPair csm_boundaries(Step n_max, const TestConfig& cfg) {
  CsmBoundaryGenerator gen(cfg);
  return gen.table(n_max);
}

RunResult csm_run(SampleSource& source, const TestConfig& cfg) {
  cfg.validate();
  const double log_eps = std::log(cfg.epsilon);
  Step s = 0;
  for (Step n = 1;; ++n) {
    s += source.next();
    const double est = static_cast<double>(s) / static_cast<double>(n);
    if (!inside(n, s, cfg.alpha, log_eps)) {
      // The confidence set contains S/n, so it sits wholly on the side of alpha that S/n is on.
      if (est > cfg.alpha) return {n, s, est, Decision::accept_null, StopReason::upper};
      return {n, s, est, Decision::reject_null, StopReason::lower};
    }
    if (cfg.max_steps && n >= *cfg.max_steps) {
      return {n, s, est, Decision::no_decision, StopReason::truncation};
    }
  }
}

}  // namespace seqmc
