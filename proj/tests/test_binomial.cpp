#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "seqmc/binomial.hpp"
#include "seqmc/errors.hpp"

using namespace seqmc;

TEST_CASE("small cases against a repeated product") {
  double prod = 1.0;
  for (int i = 0; i < 10; ++i) prod *= 0.95;
  CHECK(log_binom_pmf(10, 0.05, 0) == doctest::Approx(std::log(prod)).epsilon(1e-14));
  CHECK(binom_pmf(300, 0.05, 0) == doctest::Approx(std::exp(300.0 * std::log(0.95))).epsilon(1e-12));
  CHECK(binom_pmf(4, 0.5, 2) == doctest::Approx(6.0 / 16.0).epsilon(1e-14));
  CHECK(binom_pmf(1, 0.3, 1) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("degenerate p and n are exact") {
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(log_binom_pmf(0, 0.3, 0) == 0.0);
  CHECK(log_binom_pmf(7, 0.0, 0) == 0.0);
  CHECK(log_binom_pmf(7, 1.0, 7) == 0.0);
  CHECK(log_binom_pmf(7, 0.0, 1) == ninf);
  CHECK(log_binom_pmf(7, 1.0, 6) == ninf);
  CHECK(binom_pmf(7, 1.0, 6) == 0.0);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(log_binom_pmf(5, 0.5, 6), PreconditionError);
  CHECK_THROWS_AS(log_binom_pmf(5, 0.5, -1), PreconditionError);
  CHECK_THROWS_AS(log_binom_pmf(-1, 0.5, 0), PreconditionError);
  CHECK_THROWS_AS(log_binom_pmf(5, 1.5, 2), PreconditionError);
  CHECK_THROWS_AS(log_binom_pmf(5, std::nan(""), 2), PreconditionError);
}

TEST_CASE("relative accuracy against 50-digit lgamma up to n = 1e7") {
  const std::int64_t ns[] = {1, 2, 17, 300, 5000, 50000, 1000000, 10000000};
  const double ps[] = {1e-6, 0.01, 0.05, 0.3, 0.5, 0.93};
  double worst = 0.0;
  for (const auto n : ns) {
    for (const double p : ps) {
      const double mean = p * static_cast<double>(n);
      const double sd = std::sqrt(mean * (1.0 - p)) + 1.0;
      const std::int64_t xs[] = {0, 1, n / 3, static_cast<std::int64_t>(mean),
                                 static_cast<std::int64_t>(mean + 3 * sd), n - 1, n};
      for (auto x : xs) {
        x = std::clamp<std::int64_t>(x, 0, n);
        const double want = oracle::log_pmf(n, p, x);
        const double got = log_binom_pmf(n, p, x);
        const double rel = std::abs(got - want) / std::max(1.0, std::abs(want));
        worst = std::max(worst, rel);
        CHECK_MESSAGE(rel <= 1e-12, "n=" << n << " p=" << p << " x=" << x);
      }
    }
  }
  MESSAGE("worst relative error " << worst);
}

TEST_CASE("pmf sums to one") {
  for (const std::int64_t n : {1, 10, 1000, 20000}) {
    double total = 0.0;
    for (std::int64_t x = 0; x <= n; ++x) total += binom_pmf(n, 0.05, x);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}
