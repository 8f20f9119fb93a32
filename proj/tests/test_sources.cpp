#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "seqmc/errors.hpp"
#include "seqmc/rng.hpp"
#include "seqmc/sources.hpp"

using namespace seqmc;

namespace {

// Welch t and df written out from the textbook formulas.
std::pair<double, double> textbook_welch(const std::vector<double>& a, const std::vector<double>& b) {
  auto mv = [](const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::pair{m, ss / static_cast<double>(v.size() - 1)};
  };
  const auto [m1, v1] = mv(a);
  const auto [m2, v2] = mv(b);
  const double n1 = static_cast<double>(a.size()), n2 = static_cast<double>(b.size());
  const double se2 = v1 / n1 + v2 / n2;
  const double df = se2 * se2 / ((v1 / n1) * (v1 / n1) / (n1 - 1) + (v2 / n2) * (v2 / n2) / (n2 - 1));
  return {(m1 - m2) / std::sqrt(se2), df};
}

std::vector<double> as_double(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("penguin data") {
  const auto d = penguin_counts();
  CHECK(d.group1.size() == 19);
  CHECK(d.group2.size() == 10);
  CHECK(std::accumulate(d.group1.begin(), d.group1.end(), std::int64_t{0}) == 79);
  CHECK(std::accumulate(d.group2.begin(), d.group2.end(), std::int64_t{0}) == 99);
  CHECK(d.total() == 178);
  const auto g1 = as_double(d.group1), g2 = as_double(d.group2);
  const auto w = welch_t(g1, g2);
  const auto [t, df] = textbook_welch(g1, g2);
  CHECK(w.t == doctest::Approx(t).epsilon(1e-13));
  CHECK(w.df == doctest::Approx(df).epsilon(1e-13));
  CHECK(w.t == doctest::Approx(-1.8620).epsilon(1e-4));
  CHECK(w.df == doctest::Approx(9.821).epsilon(1e-3));
}

TEST_CASE("welch preconditions") {
  const std::vector<double> one{1.0}, flat{2.0, 2.0, 2.0}, ok{1.0, 2.0, 4.0};
  CHECK_THROWS_AS(welch_t(one, ok), PreconditionError);
  CHECK_THROWS_AS(welch_t(flat, flat), PreconditionError);
  CHECK_THROWS_AS(welch_t(flat, ok), PreconditionError);
  CHECK_NOTHROW(welch_t(ok, ok));
}

TEST_CASE("bootstrap allocation") {
  BootstrapAllocationSource a(penguin_counts(), 9), b(penguin_counts(), 9);
  CHECK(a.observed_t() == doctest::Approx(-1.8620).epsilon(1e-4));
  for (int i = 0; i < 200; ++i) {
    CHECK(a.next() == b.next());
    const auto alloc = a.last_allocation();
    CHECK(alloc.size() == 29);
    CHECK(std::accumulate(alloc.begin(), alloc.end(), std::int64_t{0}) == 178);
  }
  CHECK(a.draws() == 200);
}

TEST_CASE("bootstrap exceedance agrees with an independent resampler") {
  const auto data = penguin_counts();
  const double t_obs = std::abs(welch_t(as_double(data.group1), as_double(data.group2)).t);
  std::mt19937_64 gen(123);
  std::uniform_int_distribution<int> loc(0, 28);
  const int draws = 20000;
  int hits_ref = 0;
  for (int r = 0; r < draws; ++r) {
    std::vector<double> c(29, 0.0);
    for (int i = 0; i < 178; ++i) c[static_cast<std::size_t>(loc(gen))] += 1.0;
    const std::vector<double> g1(c.begin(), c.begin() + 19), g2(c.begin() + 19, c.end());
    const auto [t, df] = textbook_welch(g1, g2);
    hits_ref += std::abs(t) >= t_obs ? 1 : 0;
  }
  BootstrapAllocationSource src(data, 77);
  int hits = 0;
  for (int r = 0; r < draws; ++r) hits += src.next();
  const double p_ref = hits_ref / static_cast<double>(draws);
  const double p = hits / static_cast<double>(draws);
  const double se = std::sqrt(2.0 * p_ref * (1 - p_ref) / draws);
  CHECK(std::abs(p - p_ref) <= 4.0 * se);
}

TEST_CASE("indicator streams") {
  std::istringstream ok("0\n1\r\n1\n");
  CHECK(read_indicator_stream(ok) == std::vector<std::uint8_t>{0, 1, 1});
  std::istringstream bad("0\n2\n");
  CHECK_THROWS(read_indicator_stream(bad));
  std::istringstream blank("0\n\n1\n");
  CHECK_THROWS(read_indicator_stream(blank));
  SequenceSource s({1, 0});
  CHECK(s.next() == 1);
  CHECK(s.next() == 0);
  CHECK_THROWS_AS(s.next(), SourceExhausted);
}

TEST_CASE("two-sample CSV") {
  std::istringstream in("group,count\n1,3\n1,5\n2,7\n2,9\n");
  const auto d = read_two_sample_csv(in);
  CHECK(d.group1 == std::vector<std::int64_t>{3, 5});
  CHECK(d.group2 == std::vector<std::int64_t>{7, 9});
  std::istringstream bad("group,count\n3,1\n");
  CHECK_THROWS(read_two_sample_csv(bad));
  std::istringstream neg("group,count\n1,-1\n1,2\n2,1\n2,2\n");
  CHECK_THROWS(read_two_sample_csv(neg));
}

TEST_CASE("rng") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.bernoulli(0.0) == 0);
    CHECK(r.bernoulli(1.0) == 1);
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // Chi-square on 7 cells, 70000 draws; 99.9% critical value at 6 df is 22.46.
  std::vector<int> cells(7, 0);
  for (int i = 0; i < 70000; ++i) ++cells[r.below(7)];
  double chi = 0;
  for (int c : cells) chi += (c - 10000.0) * (c - 10000.0) / 10000.0;
  CHECK(chi < 22.46);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(3, 4) == derive_seed(3, 4));
  CHECK_THROWS_AS(FixedPSource(1.5, 1), PreconditionError);
}
