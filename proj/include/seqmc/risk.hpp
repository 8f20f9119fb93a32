#pragma once

#include <span>
#include <vector>

#include "seqmc/boundaries.hpp"
#include "seqmc/types.hpp"

namespace seqmc {

/// Law of S_n restricted to paths that have not stopped, plus the mass
/// already absorbed at each boundary. mass[i] = P(no stop by n, S_n = offset + i).
struct StateDistribution {
  Step step = 0;
  Step offset = 0;
  std::vector<double> mass{1.0};
  double stopped_upper = 0.0;
  double stopped_lower = 0.0;

  double in_flight() const;
};

/// One Bernoulli(p) step without absorption: S -> S w.p. 1-p, S+1 w.p. p.
/// The support grows by one state.
void advance(StateDistribution& dist, double p);

/// Moves mass at or above `b.upper` into stopped_upper, at or below
/// `b.lower` into stopped_lower, and trims the support to (lower, upper).
void absorb(StateDistribution& dist, StepBounds b);

/// advance + absorb with the boundaries of step dist.step + 1.
StateDistribution evolve(StateDistribution dist, double p, StepBounds next);
/// As above, reading step dist.step + 1 from a table (BoundaryExhausted past its end).
StateDistribution evolve(StateDistribution dist, double p, const BoundaryPair& bounds);

/// Cumulative boundary-hitting probabilities; entry n-1 holds the value after step n.
struct RiskTrace {
  double p = 0.0;
  std::vector<double> upper;
  std::vector<double> lower;

  Step n_max() const noexcept { return static_cast<Step>(upper.size()); }
};

RiskTrace hitting_probabilities(const BoundaryPair& bounds, double p, Step n_max);

enum class TruncationRule { none, force_decision_at_cap };

/// Forced decision at a cap of n samples with s exceedances: reject the null
/// iff (s+1)/(n+1) <= alpha.
bool forced_rejects(Step s, Step n, double alpha) noexcept;
double forced_estimate(Step s, Step n) noexcept;

/// Probability of a wrong decision after running `bounds` up to n_max.
/// For p <= alpha that is an upper hit, plus (when forcing) the in-flight
/// mass whose forced decision accepts; mirrored for p > alpha.
double resampling_risk(const BoundaryPair& bounds, double p, double alpha, Step n_max,
                       TruncationRule rule);

struct EffortEstimate {
  double expectation = 0.0;   // E[min(tau, horizon)] = sum_{n < horizon} P(tau > n)
  double residual_mass = 0.0; // P(tau > horizon)
  Step horizon = 0;
  bool truncated = false;     // hard cap reached with residual_mass >= tail_tol
};

/// Extends the DP until the in-flight mass drops below tail_tol or the hard
/// cap is reached. A cap hit is reported via `truncated`, never silently.
EffortEstimate expected_stopping_time(BoundaryProvider& bounds, double p, double tail_tol,
                                      Step hard_cap);

enum class Side { upper, lower };

struct RatePoint {
  Step n = 0;
  double delta = 0.0;   // mean per-step hitting mass over (n - stride, n]
  double scaled = 0.0;  // delta * n^l
};

struct RateSeries {
  Side side = Side::upper;
  double exponent = 0.0;
  std::vector<RatePoint> points;
  double slope = 0.0;        // OLS slope of log(delta) on log(n), n > burn_in
  std::size_t fitted = 0;    // points used in the fit
};

RateSeries spend_rate_series(const RiskTrace& trace, Side side, double exponent, Step stride = 100,
                             Step burn_in = 500);
RateSeries spend_rate_series(const BoundaryPair& bounds, double p, Side side, double exponent,
                             Step stride = 100, Step burn_in = 500);

/// Ordinary least squares slope of log(y) on log(x). Throws with fewer than 2 points.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace seqmc
