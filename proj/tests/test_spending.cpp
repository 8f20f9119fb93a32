#include <doctest.h>

#include "seqmc/errors.hpp"
#include "seqmc/spending.hpp"

using namespace seqmc;

TEST_CASE("default sequence closed form") {
  const auto s = SpendingSequence::default_rate(1e-3);
  CHECK(spending_at(s, 50000) == doctest::Approx(1e-3 * 50000.0 / 51000.0).epsilon(1e-15));
  CHECK(spending_at(s, 1) == doctest::Approx(1e-3 / 1001.0));
  double prev = 0.0;
  for (Step n = 1; n <= 100000; n += 97) {
    const double e = spending_at(s, n);
    CHECK(e > prev);
    CHECK(e < 1e-3);
    prev = e;
  }
}

TEST_CASE("truncated sequence branches") {
  const auto s = SpendingSequence::truncated(1e-3, 100, 10000);
  CHECK(spending_at(s, 1) == 0.0);
  CHECK(spending_at(s, 100) == 0.0);
  CHECK(spending_at(s, 101) == doctest::Approx(1e-3 * 101.0 / 1101.0));
  CHECK(spending_at(s, 9999) == doctest::Approx(1e-3 * 9999.0 / 10999.0));
  CHECK(spending_at(s, 10000) == 1e-3);
  CHECK(spending_at(s, 123456) == 1e-3);
  CHECK_FALSE(s.monotone_boundaries());
}

TEST_CASE("power sequence") {
  const auto s = SpendingSequence::power(1e-3, 0.5, 3.0);
  CHECK(spending_at(s, 16) == doctest::Approx(1e-3 * 4.0 / 7.0));
  CHECK(s.monotone_boundaries());
}

TEST_CASE("descriptors round trip") {
  const SpendingSequence seqs[] = {SpendingSequence::default_rate(1e-3), SpendingSequence::default_rate(1e-3, 250),
                                   SpendingSequence::truncated(1e-3, 100, 10000),
                                   SpendingSequence::power(1e-3, 0.5, 3.0)};
  for (const auto& s : seqs) CHECK(parse_spending(describe(s), 1e-3) == s);
  CHECK(describe(SpendingSequence::default_rate(1e-3)) == "default(k=1000)");
  CHECK(describe(SpendingSequence::truncated(1e-3, 100, 10000)) == "truncated(L=100,U=10000,k=1000)");
  CHECK(describe(SpendingSequence::power(1e-3, 0.5, 3)) == "power(gamma=0.5,k=3)");
  CHECK(parse_spending("power:gamma=0.5,k=3", 1e-3) == SpendingSequence::power(1e-3, 0.5, 3));
  CHECK(parse_spending("truncated", 1e-3) == SpendingSequence::truncated(1e-3, 100, 10000));
  CHECK(parse_spending("default", 1e-3) == SpendingSequence::default_rate(1e-3));
}

TEST_CASE("invalid sequences") {
  CHECK_THROWS_AS(spending_at(SpendingSequence::default_rate(1e-3), 0), PreconditionError);
  CHECK_THROWS_AS(SpendingSequence::default_rate(1e-3, -1).validate(), PreconditionError);
  CHECK_THROWS_AS(SpendingSequence::truncated(1e-3, 100, 50).validate(), PreconditionError);
  CHECK_THROWS_AS(SpendingSequence::power(1e-3, 0.0, 3).validate(), PreconditionError);
  CHECK_THROWS(parse_spending("geometric(k=2)", 1e-3));
  CHECK_THROWS(parse_spending("default(k=)", 1e-3));
  CHECK_THROWS(parse_spending("default(q=3)", 1e-3));
}
