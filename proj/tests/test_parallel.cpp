#include <doctest.h>

#include "seqmc/csm.hpp"
#include "seqmc/parallel.hpp"
#include "seqmc/simctest.hpp"
#include "seqmc/sources.hpp"
#include "seqmc/truncated.hpp"

using namespace seqmc;

TEST_CASE("parallel batches equal the serial reference") {
  const TestConfig cfg{0.05, 1e-3, 5000};
  const auto b = simctest_boundaries(5000, cfg, SpendingSequence::default_rate(1e-3)).bounds;
  auto one = [&](std::uint64_t seed) {
    FixedPSource src(0.045, seed);
    return simctest_run(src, b, cfg.max_steps);
  };
  const auto serial = run_batch(300, 17, one, Execution::serial);
  const auto parallel = run_batch(300, 17, one, Execution::parallel);
  CHECK(serial == parallel);
  const auto s = summarize(serial);
  CHECK(s.runs == 300);
  CHECK(s.rejected + s.accepted + s.undecided == 300);
}

TEST_CASE("risk curves equal the serial reference") {
  TruncatedConfig cfg;
  cfg.cap = 2000;
  const std::vector<double> grid{0.01, 0.03, 0.05, 0.07, 0.2};
  CHECK(truncated_risk_curve(cfg, grid, Execution::serial) == truncated_risk_curve(cfg, grid, Execution::parallel));
  CHECK(truncated_risk_curve_mc(cfg, grid, 200, 3, Execution::serial) ==
        truncated_risk_curve_mc(cfg, grid, 200, 3, Execution::parallel));
}

TEST_CASE("summary statistics") {
  std::vector<RunResult> rs{{10, 1, 0.1, Decision::accept_null, StopReason::upper},
                            {20, 0, 0.0, Decision::reject_null, StopReason::lower},
                            {30, 3, 0.1, Decision::no_decision, StopReason::truncation}};
  const auto s = summarize(rs);
  CHECK(s.accepted == 1);
  CHECK(s.rejected == 1);
  CHECK(s.undecided == 1);
  CHECK(s.mean_steps == doctest::Approx(20.0));
  CHECK(s.sd_steps == doctest::Approx(10.0));
  CHECK(s.mean_estimate == doctest::Approx(0.2 / 3.0));
}
