#include "seqmc/sources.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>

#include "seqmc/errors.hpp"
#include "seqmc/format.hpp"

namespace seqmc {

FixedPSource::FixedPSource(double p, std::uint64_t seed) : SampleSource(seed), p_(p), rng_(seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("fixed_p_source: p must lie in [0,1]");
}

SequenceSource::SequenceSource(std::vector<std::uint8_t> values) : SampleSource(0), values_(std::move(values)) {}

int SequenceSource::draw() {
  if (pos_ >= values_.size()) {
    throw SourceExhausted("input stream exhausted after " + std::to_string(values_.size()) + " samples");
  }
  return values_[pos_++];
}

std::vector<std::uint8_t> read_indicator_stream(std::istream& in) {
  std::vector<std::uint8_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "0" || line == "1") {
      out.push_back(static_cast<std::uint8_t>(line[0] - '0'));
    } else {
      throw ParseError(lineno, "expected '0' or '1', got '" + line + "'");
    }
  }
  return out;
}

std::vector<std::uint8_t> read_indicator_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_indicator_stream(in);
}

namespace {

struct Moments {
  double mean;
  double var;  // n-1 divisor
};

template <class T>
Moments moments(std::span<const T> v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (const T x : v) sum += static_cast<double>(x);
  const double mean = sum / n;
  double ss = 0.0;
  for (const T x : v) {
    const double d = static_cast<double>(x) - mean;
    ss += d * d;
  }
  return {mean, ss / (n - 1.0)};
}

template <class T>
double welch_abs_t(std::span<const T> x, std::span<const T> y) {
  const Moments a = moments(x);
  const Moments b = moments(y);
  const double se2 = a.var / static_cast<double>(x.size()) + b.var / static_cast<double>(y.size());
  const double diff = std::fabs(a.mean - b.mean);
  if (se2 == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / std::sqrt(se2);
}

}  // namespace

WelchResult welch_t(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2 || y.size() < 2) throw PreconditionError("welch_t: each group needs at least 2 values");
  const Moments a = moments(x);
  const Moments b = moments(y);
  if (!(a.var > 0.0) || !(b.var > 0.0)) throw PreconditionError("welch_t: group with zero variance");
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  const double v1 = a.var / n1;
  const double v2 = b.var / n2;
  WelchResult r;
  r.t = (a.mean - b.mean) / std::sqrt(v1 + v2);
  r.df = (v1 + v2) * (v1 + v2) / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
  return r;
}

std::int64_t TwoSampleCounts::total() const {
  return std::accumulate(group1.begin(), group1.end(), std::int64_t{0}) +
         std::accumulate(group2.begin(), group2.end(), std::int64_t{0});
}

void TwoSampleCounts::validate() const {
  if (group1.size() < 2 || group2.size() < 2) throw PreconditionError("each group needs at least 2 locations");
  for (const auto* g : {&group1, &group2}) {
    for (const auto c : *g) {
      if (c < 0) throw PreconditionError("counts must be non-negative");
    }
  }
  if (total() < 1) throw PreconditionError("total count must be positive");
}

TwoSampleCounts penguin_counts() {
  return {{7, 3, 3, 7, 3, 7, 3, 10, 1, 7, 4, 1, 3, 2, 1, 2, 9, 4, 2}, {15, 32, 1, 13, 14, 11, 1, 3, 2, 7}};
}

TwoSampleCounts read_two_sample_csv(std::istream& in) {
  TwoSampleCounts data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "group,count") throw ParseError(1, "expected header 'group,count'");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(lineno, "expected 'group,count'");
    std::int64_t group = 0, count = 0;
    try {
      group = parse_int(std::string_view(line).substr(0, comma));
      count = parse_int(std::string_view(line).substr(comma + 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    if (group == 1) {
      data.group1.push_back(count);
    } else if (group == 2) {
      data.group2.push_back(count);
    } else {
      throw ParseError(lineno, "group must be 1 or 2");
    }
  }
  if (lineno == 0) throw ParseError(1, "empty input");
  data.validate();
  return data;
}

TwoSampleCounts read_two_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_two_sample_csv(in);
}

BootstrapAllocationSource::BootstrapAllocationSource(TwoSampleCounts data, std::uint64_t seed)
    : SampleSource(seed), data_(std::move(data)), observed_t_(0.0), total_(0), rng_(seed) {
  data_.validate();
  std::vector<double> x(data_.group1.begin(), data_.group1.end());
  std::vector<double> y(data_.group2.begin(), data_.group2.end());
  observed_t_ = welch_t(x, y).t;
  total_ = data_.total();
  counts_.assign(data_.locations(), 0);
}

int BootstrapAllocationSource::draw() {
  std::fill(counts_.begin(), counts_.end(), 0);
  const auto locations = static_cast<std::uint64_t>(counts_.size());
  for (std::int64_t i = 0; i < total_; ++i) ++counts_[rng_.below(locations)];
  const std::span<const std::int64_t> all(counts_);
  const double t = welch_abs_t(all.first(data_.group1.size()), all.subspan(data_.group1.size()));
  return t >= std::fabs(observed_t_) ? 1 : 0;
}

}  // namespace seqmc
