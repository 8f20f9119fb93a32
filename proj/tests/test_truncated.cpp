#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "seqmc/errors.hpp"
#include "seqmc/risk.hpp"
#include "seqmc/sources.hpp"
#include "seqmc/truncated.hpp"

using namespace seqmc;

TEST_CASE("Besag-Clifford DP equals enumeration") {
  for (const int h : {1, 2, 3}) {
    for (const int cap : {5, 12, 18}) {
      for (const double p : {0.03, 0.05, 0.2, 0.5}) {
        const double want = oracle::besag_clifford_enumerated(p, 0.05, h, cap);
        CHECK_MESSAGE(std::abs(besag_clifford_risk(p, 0.05, h, cap) - want) <= 1e-12,
                      "h=" << h << " cap=" << cap << " p=" << p);
      }
    }
  }
  CHECK_THROWS_AS(besag_clifford_risk(0.1, 0.05, 0, 10), PreconditionError);
  CHECK_THROWS_AS(besag_clifford_risk(0.1, 0.05, 11, 10), PreconditionError);
}

TEST_CASE("exact curve matches Monte Carlo") {
  for (const auto proc : {Procedure::csm, Procedure::simctest, Procedure::besag_clifford}) {
    TruncatedConfig cfg;
    cfg.procedure = proc;
    cfg.cap = 400;
    cfg.epsilon = 0.05;
    const std::vector<double> grid{0.03, 0.05, 0.08};
    const auto exact = truncated_risk_curve(cfg, grid);
    const auto mc = truncated_risk_curve_mc(cfg, grid, 4000, 5);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = exact[i].risk;
      const double se = std::sqrt(std::max(r * (1 - r), 1e-6) / 4000.0);
      CHECK(std::abs(mc[i].risk - r) <= 4.5 * se);
    }
  }
}

TEST_CASE("truncated runs") {
  TruncatedConfig cfg;
  cfg.cap = 100;
  cfg.epsilon = 1e-3;
  SequenceSource zeros(std::vector<std::uint8_t>(200, 0));
  const RunResult r = truncated_run(zeros, cfg);
  CHECK(r.steps == 100);
  CHECK(r.decision == Decision::reject_null);
  CHECK(r.stopped_by == StopReason::truncation);
  CHECK(r.estimate == doctest::Approx(1.0 / 101.0));

  cfg.procedure = Procedure::besag_clifford;
  cfg.h = 3;
  std::vector<std::uint8_t> seq(100, 0);
  seq[4] = seq[9] = seq[19] = 1;
  SequenceSource s(seq);
  const RunResult bc = truncated_run(s, cfg);
  CHECK(bc.steps == 20);
  CHECK(bc.estimate == doctest::Approx(3.0 / 20.0));
  CHECK(bc.decision == Decision::accept_null);

  cfg.procedure = Procedure::csm;
  cfg.cap = 0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
}

TEST_CASE("forced mass at the cap is what the open-ended procedure leaves behind") {
  TruncatedConfig cfg;
  cfg.cap = 13000;
  const BoundaryPair b = truncated_boundaries(cfg);
  const RiskTrace t = hitting_probabilities(b, 0.05, 13000);
  const double in_flight = 1.0 - t.upper.back() - t.lower.back();
  const double forced = resampling_risk(b, 0.05, 0.05, 13000, TruncationRule::force_decision_at_cap) - t.upper.back();
  CHECK(forced > 0.0);
  CHECK(forced < in_flight);
  CHECK(truncated_risk_curve(cfg, std::vector<double>{0.05})[0].risk ==
        resampling_risk(b, 0.05, 0.05, 13000, TruncationRule::force_decision_at_cap));
}

TEST_CASE("risk curve CSV round trip") {
  const std::vector<RiskPoint> curve{{0.01, 1e-9}, {0.05, 0.5131974851315869}, {0.1, 0.0}};
  std::stringstream ss;
  write_risk_curve(curve, ss);
  CHECK(ss.str().rfind("p,risk\n", 0) == 0);
  CHECK(read_risk_curve(ss) == curve);
  std::stringstream bad("p,risk\n0.1,x\n");
  CHECK_THROWS(read_risk_curve(bad));
  std::stringstream bad_header("p;risk\n");
  CHECK_THROWS(read_risk_curve(bad_header));
}
