#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace seqmc {

using Step = std::int64_t;

enum class Decision { reject_null, accept_null, no_decision };

enum class StopReason { lower, upper, truncation };

std::string_view to_string(Decision d);
std::string_view to_string(StopReason r);

// Threshold alpha, risk bound epsilon, and an optional sample cap.
struct TestConfig {
  double alpha = 0.05;
  double epsilon = 1e-3;
  std::optional<Step> max_steps;

  // Throws PreconditionError unless 0 < alpha < 1, 0 < epsilon < 1, max_steps >= 1.
  void validate() const;
};

struct RunResult {
  Step steps = 0;
  Step successes = 0;
  double estimate = 0.0;
  Decision decision = Decision::no_decision;
  StopReason stopped_by = StopReason::truncation;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

}  // namespace seqmc
