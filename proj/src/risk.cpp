#include "seqmc/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seqmc/errors.hpp"

namespace seqmc {

double StateDistribution::in_flight() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }

void advance(StateDistribution& dist, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("advance: p must lie in [0,1]");
  const double q = 1.0 - p;
  const auto& m = dist.mass;
  const std::size_t len = m.size();
  std::vector<double> next(len + 1, 0.0);
  if (len) {
    next[0] = q * m[0];
    const double* src = m.data();
    double* dst = next.data();
#pragma omp simd
    for (std::size_t i = 1; i < len; ++i) dst[i] = q * src[i] + p * src[i - 1];
    next[len] = p * m[len - 1];
  }
  dist.mass.swap(next);
  ++dist.step;
}

void absorb(StateDistribution& dist, StepBounds b) {
  if (b.lower >= b.upper) throw PreconditionError("absorb: lower boundary must be below upper");
  auto& m = dist.mass;
  const Step top = dist.offset + static_cast<Step>(m.size()) - 1;
  const Step keep_lo = std::max(dist.offset, b.lower + 1);
  const Step keep_hi = std::min(top, b.upper - 1);

  // Upper tail summed top-down, lower tail bottom-up: the same order the
  // SIMCTEST boundary search accumulates in, so both agree bit for bit.
  double up = 0.0;
  for (Step s = top; s >= std::max(b.upper, dist.offset); --s) up += m[static_cast<std::size_t>(s - dist.offset)];
  double lo = 0.0;
  for (Step s = dist.offset; s <= std::min(b.lower, top); ++s) lo += m[static_cast<std::size_t>(s - dist.offset)];
  dist.stopped_upper += up;
  dist.stopped_lower += lo;

  if (keep_lo > keep_hi) {
    m.clear();
    dist.offset = b.lower + 1;
    return;
  }
  const auto first = static_cast<std::ptrdiff_t>(keep_lo - dist.offset);
  const auto last = static_cast<std::ptrdiff_t>(keep_hi - dist.offset) + 1;
  m.erase(m.begin() + last, m.end());
  m.erase(m.begin(), m.begin() + first);
  dist.offset = keep_lo;
}

StateDistribution evolve(StateDistribution dist, double p, StepBounds next) {
  advance(dist, p);
  absorb(dist, next);
  return dist;
}

StateDistribution evolve(StateDistribution dist, double p, const BoundaryPair& bounds) {
  const StepBounds next = bounds.at(dist.step + 1);
  return evolve(std::move(dist), p, next);
}

RiskTrace hitting_probabilities(const BoundaryPair& bounds, double p, Step n_max) {
  if (n_max > bounds.n_max()) throw BoundaryExhausted(bounds.n_max(), n_max);
  RiskTrace trace;
  trace.p = p;
  trace.upper.reserve(static_cast<std::size_t>(n_max));
  trace.lower.reserve(static_cast<std::size_t>(n_max));
  StateDistribution dist;
  for (Step n = 1; n <= n_max; ++n) {
    advance(dist, p);
    absorb(dist, bounds.at(n));
    trace.upper.push_back(dist.stopped_upper);
    trace.lower.push_back(dist.stopped_lower);
  }
  return trace;
}

bool forced_rejects(Step s, Step n, double alpha) noexcept { return forced_estimate(s, n) <= alpha; }

double forced_estimate(Step s, Step n) noexcept {
  return static_cast<double>(s + 1) / static_cast<double>(n + 1);
}

double resampling_risk(const BoundaryPair& bounds, double p, double alpha, Step n_max, TruncationRule rule) {
  if (n_max > bounds.n_max()) throw BoundaryExhausted(bounds.n_max(), n_max);
  StateDistribution dist;
  for (Step n = 1; n <= n_max; ++n) {
    advance(dist, p);
    absorb(dist, bounds.at(n));
  }
  const bool null_true = p <= alpha;
  double risk = null_true ? dist.stopped_upper : dist.stopped_lower;
  if (rule == TruncationRule::force_decision_at_cap) {
    for (std::size_t i = 0; i < dist.mass.size(); ++i) {
      const Step s = dist.offset + static_cast<Step>(i);
      if (forced_rejects(s, n_max, alpha) != null_true) risk += dist.mass[i];
    }
  }
  return risk;
}

EffortEstimate expected_stopping_time(BoundaryProvider& bounds, double p, double tail_tol, Step hard_cap) {
  if (!(tail_tol > 0.0)) throw PreconditionError("expected_stopping_time: tail_tol must be positive");
  if (hard_cap < 1) throw PreconditionError("expected_stopping_time: hard_cap must be >= 1");
  EffortEstimate out;
  StateDistribution dist;
  double alive = 1.0;  // P(tau > n) for the current n
  Step n = 0;
  while (alive >= tail_tol && n < hard_cap) {
    out.expectation += alive;
    advance(dist, p);
    ++n;
    absorb(dist, bounds.at(n));
    alive = dist.in_flight();
  }
  out.residual_mass = alive;
  out.horizon = n;
  out.truncated = alive >= tail_tol;
  return out;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("fit_loglog_slope: need >= 2 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

RateSeries spend_rate_series(const RiskTrace& trace, Side side, double exponent, Step stride, Step burn_in) {
  if (stride < 1) throw PreconditionError("spend_rate_series: stride must be >= 1");
  const auto& cum = side == Side::upper ? trace.upper : trace.lower;
  RateSeries out;
  out.side = side;
  out.exponent = exponent;
  std::vector<double> fx, fy;
  for (Step n = stride; n <= trace.n_max(); n += stride) {
    const double prev = n > stride ? cum[static_cast<std::size_t>(n - stride - 1)] : 0.0;
    const double delta = (cum[static_cast<std::size_t>(n - 1)] - prev) / static_cast<double>(stride);
    const double nn = static_cast<double>(n);
    out.points.push_back({n, delta, delta * std::pow(nn, exponent)});
    if (n > burn_in && delta > 0.0) {
      fx.push_back(nn);
      fy.push_back(delta);
    }
  }
  out.fitted = fx.size();
  if (fx.size() >= 2) out.slope = fit_loglog_slope(fx, fy);
  return out;
}

RateSeries spend_rate_series(const BoundaryPair& bounds, double p, Side side, double exponent, Step stride,
                             Step burn_in) {
  return spend_rate_series(hitting_probabilities(bounds, p, bounds.n_max()), side, exponent, stride, burn_in);
}

}  // namespace seqmc
