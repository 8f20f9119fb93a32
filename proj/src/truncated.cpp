#include "seqmc/truncated.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "seqmc/csm.hpp"
#include "seqmc/errors.hpp"
#include "seqmc/format.hpp"
#include "seqmc/risk.hpp"
#include "seqmc/simctest.hpp"
#include "seqmc/sources.hpp"

namespace seqmc {
namespace {

SpendingSequence spending_for(const TruncatedConfig& cfg) {
  return cfg.spending.value_or(SpendingSequence::default_rate(cfg.epsilon));
}

double bc_estimate(Step h, Step n) { return static_cast<double>(h) / static_cast<double>(n); }

RunResult forced(Step s, Step n, double alpha) {
  const bool rejects = forced_rejects(s, n, alpha);
  return {n, s, forced_estimate(s, n), rejects ? Decision::reject_null : Decision::accept_null,
          StopReason::truncation};
}

RunResult run_besag_clifford(SampleSource& source, const TruncatedConfig& cfg) {
  Step s = 0;
  for (Step n = 1; n <= cfg.cap; ++n) {
    s += source.next();
    if (s == cfg.h) {
      const double est = bc_estimate(cfg.h, n);
      if (est > cfg.alpha) return {n, s, est, Decision::accept_null, StopReason::upper};
      return {n, s, est, Decision::reject_null, StopReason::lower};
    }
  }
  return forced(s, cfg.cap, cfg.alpha);
}

template <class StopFn>
RunResult run_until_cap(SampleSource& source, const TruncatedConfig& cfg, StopFn&& stops) {
  Step s = 0;
  for (Step n = 1; n <= cfg.cap; ++n) {
    s += source.next();
    if (const auto side = stops(n, s)) {
      const double est = static_cast<double>(s) / static_cast<double>(n);
      if (*side == StopReason::upper) return {n, s, est, Decision::accept_null, StopReason::upper};
      return {n, s, est, Decision::reject_null, StopReason::lower};
    }
  }
  return forced(s, cfg.cap, cfg.alpha);
}

}  // namespace

void TruncatedConfig::validate() const {
  if (cap < 1) throw PreconditionError("truncated: cap must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("truncated: alpha must lie in (0,1)");
  if (procedure == Procedure::besag_clifford) {
    if (h < 1 || h > cap) throw PreconditionError("truncated: Besag-Clifford needs 1 <= h <= cap");
  } else if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw PreconditionError("truncated: epsilon must lie in (0,1)");
  }
  if (spending && spending->epsilon != epsilon) {
    throw PreconditionError("truncated: spending epsilon does not match epsilon");
  }
}

BoundaryPair truncated_boundaries(const TruncatedConfig& cfg) {
  cfg.validate();
  const TestConfig test{cfg.alpha, cfg.epsilon, std::nullopt};
  switch (cfg.procedure) {
    case Procedure::csm: return csm_boundaries(cfg.cap, test);
    case Procedure::simctest: return simctest_boundaries(cfg.cap, test, spending_for(cfg)).bounds;
    case Procedure::besag_clifford: break;
  }
  throw PreconditionError("Besag-Clifford has no boundary table");
}

RunResult truncated_run(SampleSource& source, const TruncatedConfig& cfg) {
  cfg.validate();
  switch (cfg.procedure) {
    case Procedure::besag_clifford: return run_besag_clifford(source, cfg);
    case Procedure::csm: {
      const TestConfig test{cfg.alpha, cfg.epsilon, std::nullopt};
      return run_until_cap(source, cfg, [&](Step n, Step s) -> std::optional<StopReason> {
        if (!csm_should_stop(n, s, test)) return std::nullopt;
        return static_cast<double>(s) > cfg.alpha * static_cast<double>(n) ? StopReason::upper : StopReason::lower;
      });
    }
    case Procedure::simctest: return truncated_run(source, cfg, truncated_boundaries(cfg));
  }
  return {};
}

RunResult truncated_run(SampleSource& source, const TruncatedConfig& cfg, const BoundaryPair& bounds) {
  cfg.validate();
  if (cfg.procedure == Procedure::besag_clifford) return run_besag_clifford(source, cfg);
  if (bounds.n_max() < cfg.cap) throw BoundaryExhausted(bounds.n_max(), cfg.cap);
  return run_until_cap(source, cfg, [&](Step n, Step s) -> std::optional<StopReason> {
    const StepBounds b = bounds.at(n);
    if (s >= b.upper) return StopReason::upper;
    if (s <= b.lower) return StopReason::lower;
    return std::nullopt;
  });
}

double besag_clifford_risk(double p, double alpha, Step h, Step cap) {
  if (h < 1 || h > cap) throw PreconditionError("besag_clifford_risk: need 1 <= h <= cap");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("besag_clifford_risk: p must lie in [0,1]");
  const bool null_true = p <= alpha;
  const double q = 1.0 - p;
  std::vector<double> mass(static_cast<std::size_t>(h), 0.0);  // P(S_n = s, not stopped), s < h
  mass[0] = 1.0;
  double risk = 0.0;
  for (Step n = 1; n <= cap; ++n) {
    const double stopping = p * mass.back();
    for (std::size_t s = mass.size() - 1; s > 0; --s) mass[s] = q * mass[s] + p * mass[s - 1];
    mass[0] *= q;
    const bool accepts = bc_estimate(h, n) > alpha;
    if (accepts == null_true) risk += stopping;
  }
  for (std::size_t s = 0; s < mass.size(); ++s) {
    if (forced_rejects(static_cast<Step>(s), cap, alpha) != null_true) risk += mass[s];
  }
  return risk;
}

std::vector<RiskPoint> truncated_risk_curve(const TruncatedConfig& cfg, std::span<const double> p_grid,
                                            Execution exec) {
  cfg.validate();
  BoundaryPair bounds;
  if (cfg.procedure != Procedure::besag_clifford) bounds = truncated_boundaries(cfg);
  return map_indices(
      static_cast<std::int64_t>(p_grid.size()),
      [&](std::int64_t i) {
        const double p = p_grid[static_cast<std::size_t>(i)];
        const double risk = cfg.procedure == Procedure::besag_clifford
                                ? besag_clifford_risk(p, cfg.alpha, cfg.h, cfg.cap)
                                : resampling_risk(bounds, p, cfg.alpha, cfg.cap,
                                                  TruncationRule::force_decision_at_cap);
        return RiskPoint{p, risk};
      },
      exec);
}

std::vector<RiskPoint> truncated_risk_curve_mc(const TruncatedConfig& cfg, std::span<const double> p_grid,
                                               std::int64_t runs, std::uint64_t seed, Execution exec) {
  cfg.validate();
  if (runs < 1) throw PreconditionError("truncated_risk_curve_mc: runs must be >= 1");
  BoundaryPair bounds;
  if (cfg.procedure != Procedure::besag_clifford) bounds = truncated_boundaries(cfg);

  std::vector<RiskPoint> curve;
  curve.reserve(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    const double p = p_grid[i];
    const auto results = run_batch(
        runs, derive_seed(seed, i),
        [&](std::uint64_t run_seed) {
          FixedPSource source(p, run_seed);
          return truncated_run(source, cfg, bounds);
        },
        exec);
    const bool null_true = p <= cfg.alpha;
    std::int64_t wrong = 0;
    for (const auto& r : results) {
      wrong += null_true ? r.decision == Decision::accept_null : r.decision == Decision::reject_null;
    }
    curve.push_back({p, static_cast<double>(wrong) / static_cast<double>(runs)});
  }
  return curve;
}

void write_risk_curve(std::span<const RiskPoint> curve, std::ostream& out) {
  out << "p,risk\n";
  for (const auto& pt : curve) out << format_double(pt.p) << ',' << format_double(pt.risk) << '\n';
}

std::vector<RiskPoint> read_risk_curve(std::istream& in) {
  std::vector<RiskPoint> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "p,risk") throw ParseError(1, "expected header 'p,risk'");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(lineno, "expected 'p,risk'");
    try {
      out.push_back({parse_double(std::string_view(line).substr(0, comma)),
                     parse_double(std::string_view(line).substr(comma + 1))});
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (lineno == 0) throw ParseError(1, "empty risk curve");
  return out;
}

std::vector<RiskPoint> read_risk_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_risk_curve(in);
}

}  // namespace seqmc
