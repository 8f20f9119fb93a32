#pragma once

#include <cstdint>
#include <random>

namespace seqmc {

/// std::mt19937_64 with distribution code that does not depend on the
/// standard library's (implementation-defined) distribution classes, so the
/// same seed produces the same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// 1 with probability p. p=0 never fires, p=1 always does.
  int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

  /// Uniform integer in [0, bound), bound >= 1. Multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Seed for run `index` of a batch started from `base`. Mixes both through
/// std::seed_seq, so nearby indices give unrelated streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace seqmc
