#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <vector>

#include "seqmc/rng.hpp"
#include "seqmc/types.hpp"

namespace seqmc {

/// Stream of exceedance indicators X_i = 1(T_i >= t).
class SampleSource {
 public:
  virtual ~SampleSource() = default;

  int next() {
    const int x = draw();
    ++draws_;
    return x;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::int64_t draws() const noexcept { return draws_; }

 protected:
  explicit SampleSource(std::uint64_t seed) : seed_(seed) {}
  virtual int draw() = 0;

 private:
  std::uint64_t seed_;
  std::int64_t draws_ = 0;
};

/// i.i.d. Bernoulli(p) indicators.
class FixedPSource final : public SampleSource {
 public:
  /// Throws PreconditionError unless 0 <= p <= 1.
  FixedPSource(double p, std::uint64_t seed);

  double p() const noexcept { return p_; }

 protected:
  int draw() override { return rng_.bernoulli(p_); }

 private:
  double p_;
  Rng rng_;
};

/// Replays a fixed indicator sequence; throws SourceExhausted at its end.
class SequenceSource final : public SampleSource {
 public:
  explicit SequenceSource(std::vector<std::uint8_t> values);

 protected:
  int draw() override;

 private:
  std::vector<std::uint8_t> values_;
  std::size_t pos_ = 0;
};

/// Parses one `0` or `1` per line (trailing CR tolerated, blank lines are errors).
std::vector<std::uint8_t> read_indicator_stream(std::istream& in);
std::vector<std::uint8_t> read_indicator_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Two-sample Welch t and the parametric bootstrap of the penguin example.

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
};

/// Welch's statistic (mean1 - mean2) / sqrt(s1^2/n1 + s2^2/n2) with n-1
/// variances, and Welch–Satterthwaite degrees of freedom.
/// Throws PreconditionError if a group has < 2 values or zero variance.
WelchResult welch_t(std::span<const double> x, std::span<const double> y);

/// Counts per location for two groups of locations.
struct TwoSampleCounts {
  std::vector<std::int64_t> group1;
  std::vector<std::int64_t> group2;

  std::int64_t total() const;
  std::size_t locations() const { return group1.size() + group2.size(); }
  void validate() const;
};

/// Breeding yellow-eyed penguin pairs: 19 Stewart Island locations (cats
/// present) and 10 cat-free island locations; 178 pairs in total.
TwoSampleCounts penguin_counts();

/// CSV with header `group,count`; group is 1 or 2.
TwoSampleCounts read_two_sample_csv(std::istream& in);
TwoSampleCounts read_two_sample_csv(const std::filesystem::path& path);

/// Each draw allocates all pairs independently and uniformly over the
/// locations, keeps the original group split, and emits 1 iff the
/// resampled |t| >= observed |t|. A resample with zero pooled standard
/// error gets |t| = inf when the means differ and 0 when they agree.
class BootstrapAllocationSource final : public SampleSource {
 public:
  BootstrapAllocationSource(TwoSampleCounts data, std::uint64_t seed);

  double observed_t() const noexcept { return observed_t_; }
  /// Location counts of the most recent resample (group1 then group2).
  std::span<const std::int64_t> last_allocation() const noexcept { return counts_; }

 protected:
  int draw() override;

 private:
  TwoSampleCounts data_;
  double observed_t_;
  std::int64_t total_;
  std::vector<std::int64_t> counts_;
  Rng rng_;
};

}  // namespace seqmc
