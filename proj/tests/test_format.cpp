#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "seqmc/format.hpp"

using namespace seqmc;

TEST_CASE("shortest round trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e-10) == "1e-10");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
  for (const double x : {0.1 + 0.2, 1.0 / 3.0, 9.8039215686274508e-4, 5e-324}) {
    CHECK(parse_double(format_double(x)) == x);
  }
}

TEST_CASE("strict parsing") {
  CHECK(parse_double("0.05") == 0.05);
  CHECK(parse_int("-12") == -12);
  CHECK_THROWS(parse_double(""));
  CHECK_THROWS(parse_double("0.05x"));
  CHECK_THROWS(parse_double(" 1"));
  CHECK_THROWS(parse_int("1.5"));
  CHECK_THROWS(parse_int("99999999999999999999"));
}

TEST_CASE("tables") {
  Table t({"a", "b", "c"});
  t.add_row({std::int64_t{1}, 0.5, std::string("x")});
  t.add_row({std::int64_t{-2}, std::numeric_limits<double>::infinity(), std::string("q\"")});
  CHECK_THROWS(t.add_row({std::int64_t{1}}));
  std::ostringstream csv, jsonl;
  t.write(csv, OutputFormat::csv);
  t.write(jsonl, OutputFormat::jsonl);
  CHECK(csv.str() == "a,b,c\n1,0.5,x\n-2,inf,\"q\"\"\"\n");
  CHECK(jsonl.str() == "{\"a\":1,\"b\":0.5,\"c\":\"x\"}\n{\"a\":-2,\"b\":null,\"c\":\"q\\\"\"}\n");
}
