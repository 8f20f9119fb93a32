// Serial reference vs OpenMP kernels. On a single core the two should match;
// run with OMP_NUM_THREADS=k to see scaling.

#include <benchmark/benchmark.h>

#include <vector>

#include "seqmc/csm.hpp"
#include "seqmc/parallel.hpp"
#include "seqmc/risk.hpp"
#include "seqmc/simctest.hpp"
#include "seqmc/sources.hpp"
#include "seqmc/truncated.hpp"

namespace {

using namespace seqmc;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_CsmBatch(benchmark::State& state) {
  const TestConfig cfg{0.05, 1e-3, 20000};
  const BoundaryPair bounds = csm_boundaries(20000, cfg);
  for (auto _ : state) {
    auto results = run_batch(
        256, 7,
        [&](std::uint64_t seed) {
          FixedPSource src(0.04, seed);
          TableBoundaries provider(bounds);
          return boundary_run(src, provider, cfg.max_steps);
        },
        exec_of(state));
    benchmark::DoNotOptimize(results);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_CsmBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TruncatedRiskCurve(benchmark::State& state) {
  TruncatedConfig cfg;
  cfg.procedure = Procedure::csm;
  cfg.cap = 13000;
  std::vector<double> grid;
  for (int i = 1; i <= 16; ++i) grid.push_back(0.005 * i);
  for (auto _ : state) {
    auto curve = truncated_risk_curve(cfg, grid, exec_of(state));
    benchmark::DoNotOptimize(curve);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_TruncatedRiskCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SimctestBoundaries(benchmark::State& state) {
  const TestConfig cfg{0.05, 1e-3, std::nullopt};
  for (auto _ : state) {
    auto b = simctest_boundaries(state.range(0), cfg, SpendingSequence::default_rate(1e-3));
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_SimctestBoundaries)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_CsmBoundaries(benchmark::State& state) {
  const TestConfig cfg{0.05, 1e-3, std::nullopt};
  for (auto _ : state) {
    auto b = csm_boundaries(state.range(0), cfg);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_CsmBoundaries)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_HittingProbabilities(benchmark::State& state) {
  const TestConfig cfg{0.05, 1e-3, std::nullopt};
  const BoundaryPair bounds = csm_boundaries(state.range(0), cfg);
  for (auto _ : state) {
    auto trace = hitting_probabilities(bounds, 0.05, state.range(0));
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_HittingProbabilities)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
