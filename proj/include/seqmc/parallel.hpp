#pragma once

// Batch kernels. Every kernel has a serial reference path and an OpenMP path
// that must produce identical output: work item i only ever sees its own
// index-derived seed, and results land in slot i.

#include <cstdint>
#include <span>
#include <vector>

#include "seqmc/rng.hpp"
#include "seqmc/types.hpp"

namespace seqmc {

enum class Execution { serial, parallel };

/// results[i] = fn(i) for i in [0, count).
template <class Fn>
auto map_indices(std::int64_t count, Fn&& fn, Execution exec) {
  using R = decltype(fn(std::int64_t{0}));
  std::vector<R> results(static_cast<std::size_t>(count));
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = fn(i);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = fn(i);
  }
  return results;
}

/// results[r] = run(derive_seed(seed, r)) for `runs` independent runs.
template <class RunFn>
std::vector<RunResult> run_batch(std::int64_t runs, std::uint64_t seed, RunFn&& run, Execution exec) {
  return map_indices(
      runs, [&](std::int64_t r) { return run(derive_seed(seed, static_cast<std::uint64_t>(r))); },
      exec);
}

struct BatchSummary {
  std::int64_t runs = 0;
  std::int64_t rejected = 0;
  std::int64_t accepted = 0;
  std::int64_t undecided = 0;
  double mean_steps = 0.0;
  double sd_steps = 0.0;
  double mean_estimate = 0.0;
};

BatchSummary summarize(std::span<const RunResult> results);

}  // namespace seqmc
