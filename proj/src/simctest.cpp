#include "seqmc/simctest.hpp"

#include <algorithm>
#include <string>

#include "seqmc/errors.hpp"
#include "seqmc/sources.hpp"

namespace seqmc {

SimctestBoundaryGenerator::SimctestBoundaryGenerator(const TestConfig& cfg, const SpendingSequence& seq)
    : cfg_(cfg), seq_(seq) {
  cfg_.validate();
  seq_.validate();
  if (seq_.epsilon != cfg_.epsilon) {
    throw PreconditionError("spending sequence epsilon does not match the test configuration");
  }
}

void SimctestBoundaryGenerator::step() {
  advance(state_, cfg_.alpha);
  const Step n = state_.step;
  const double budget = spending_at(seq_, n);
  const auto& m = state_.mass;
  const Step offset = state_.offset;
  const Step len = static_cast<Step>(m.size());

  // Smallest U with tail(U) + cumulative upper <= eps_n.
  Step upper = offset + len;
  double tail = 0.0;
  for (Step i = len - 1; i >= 0; --i) {
    const double t = tail + m[static_cast<std::size_t>(i)];
    if (!(t + state_.stopped_upper <= budget)) break;
    tail = t;
    upper = offset + i;
  }
  // Largest L with head(L) + cumulative lower <= eps_n, kept below U.
  Step lower = offset - 1;
  double head = 0.0;
  for (Step i = 0; offset + i < upper; ++i) {
    const double t = head + m[static_cast<std::size_t>(i)];
    if (!(t + state_.stopped_lower <= budget)) break;
    head = t;
    lower = offset + i;
  }

  if (seq_.monotone_boundaries() && !upper_.empty() && (upper < upper_.back() || lower < lower_.back())) {
    throw InvariantViolation("simctest boundaries decreased at n=" + std::to_string(n));
  }
  absorb(state_, {lower, upper});
  lower_.push_back(lower);
  upper_.push_back(upper);
}

void SimctestBoundaryGenerator::extend_to(Step n) {
  if (n > computed()) {
    lower_.reserve(static_cast<std::size_t>(n));
    upper_.reserve(static_cast<std::size_t>(n));
  }
  while (computed() < n) step();
}

StepBounds SimctestBoundaryGenerator::at(Step n) {
  if (n < 1) throw PreconditionError("boundary step must be >= 1");
  if (n > computed()) extend_to(std::max(n, 2 * computed()));
  const auto i = static_cast<std::size_t>(n - 1);
  return {lower_[i], upper_[i]};
}

BoundaryPair SimctestBoundaryGenerator::table(Step n_max) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  extend_to(n_max);
  BoundaryMeta meta{kBoundaryFormatVersion, "simctest", cfg_.alpha, cfg_.epsilon, describe(seq_)};
  const auto len = static_cast<std::ptrdiff_t>(n_max);
  return BoundaryPair(std::move(meta), {lower_.begin(), lower_.begin() + len},
                      {upper_.begin(), upper_.begin() + len});
}

SimctestBoundaries simctest_boundaries(Step n_max, const TestConfig& cfg, const SpendingSequence& seq) {
  if (n_max < 1) throw PreconditionError("simctest_boundaries: n_max must be >= 1");
  SimctestBoundaryGenerator gen(cfg, seq);
  gen.extend_to(n_max);
  return {gen.table(n_max), gen.cumulative_upper(), gen.cumulative_lower()};
}

RunResult simctest_run(SampleSource& source, const BoundaryPair& bounds, std::optional<Step> max_steps) {
  TableBoundaries table(bounds);
  try {
    return boundary_run(source, table, max_steps);
  } catch (const BoundaryExhausted& e) {
    throw BoundaryExhausted(e.available(), max_steps.value_or(e.required()));
  }
}

RunResult simctest_run(SampleSource& source, const TestConfig& cfg, const SpendingSequence& seq) {
  SimctestBoundaryGenerator gen(cfg, seq);
  return boundary_run(source, gen, cfg.max_steps);
}

}  // namespace seqmc
