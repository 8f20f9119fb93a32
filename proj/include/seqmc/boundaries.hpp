#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqmc/types.hpp"

namespace seqmc {

class SampleSource;

// Stop at step n iff S_n <= lower or S_n >= upper.
struct StepBounds {
  Step lower = -1;
  Step upper = 2;

  bool stops(Step s) const noexcept { return s <= lower || s >= upper; }
  friend bool operator==(const StepBounds&, const StepBounds&) = default;
};

inline constexpr int kBoundaryFormatVersion = 1;

struct BoundaryMeta {
  int version = kBoundaryFormatVersion;
  std::string method;    // "csm" or "simctest"
  double alpha = 0.05;
  double epsilon = 1e-3;
  std::string spending;  // spending descriptor, "none" for csm

  friend bool operator==(const BoundaryMeta&, const BoundaryMeta&) = default;
};

/// Integer stopping boundaries for steps 1..n_max. Immutable once built.
class BoundaryPair {
 public:
  BoundaryPair() = default;
  /// Throws PreconditionError when the arrays differ in length.
  BoundaryPair(BoundaryMeta meta, std::vector<Step> lower, std::vector<Step> upper);

  Step n_max() const noexcept { return static_cast<Step>(lower_.size()); }
  const BoundaryMeta& meta() const noexcept { return meta_; }

  /// 1-based access; throws BoundaryExhausted past n_max.
  StepBounds at(Step n) const;
  Step lower(Step n) const { return at(n).lower; }
  Step upper(Step n) const { return at(n).upper; }

  std::span<const Step> lower_values() const noexcept { return lower_; }
  std::span<const Step> upper_values() const noexcept { return upper_; }

  /// First n_max steps (n_max <= this->n_max()).
  BoundaryPair prefix(Step n_max) const;

  friend bool operator==(const BoundaryPair&, const BoundaryPair&) = default;

 private:
  BoundaryMeta meta_;
  std::vector<Step> lower_;
  std::vector<Step> upper_;
};

/// Boundaries produced on demand; generators extend themselves, tables throw.
class BoundaryProvider {
 public:
  virtual ~BoundaryProvider() = default;
  /// Bounds at step n >= 1. Throws BoundaryExhausted if n cannot be served.
  virtual StepBounds at(Step n) = 0;
};

class TableBoundaries final : public BoundaryProvider {
 public:
  explicit TableBoundaries(const BoundaryPair& table) : table_(&table) {}
  StepBounds at(Step n) override { return table_->at(n); }

 private:
  const BoundaryPair* table_;
};

/// Sequential run against integer boundaries: upper hit accepts the null
/// (estimate above alpha), lower hit rejects it. Reaching `max_steps`
/// without a hit yields no_decision with estimate S_N/N.
RunResult boundary_run(SampleSource& source, BoundaryProvider& bounds,
                       std::optional<Step> max_steps);

}  // namespace seqmc
