#include <catch2/catch_amalgamated.hpp>

#include "bahnlab/rational.hpp"
#include "bahnlab/rng.hpp"

using namespace bahnlab;

TEST_CASE("decimal strings parse exactly") {
  CHECK(rat_from_string("0.8") == Rat(4, 5));
  CHECK(rat_from_string("12.345") == Rat(12345, 1000));
  CHECK(rat_from_string("-1.25") == Rat(-5, 4));
  CHECK(rat_from_string("42") == Rat(42));
  CHECK(rat_from_string("-3") == Rat(-3));
  CHECK(rat_from_string("4/5") == Rat(4, 5));
  CHECK(rat_from_string("-7/3") == Rat(-7, 3));
  CHECK(rat_from_string(" 0.5 ") == Rat(1, 2));
  CHECK(rat_from_string(".5") == Rat(1, 2));
}

TEST_CASE("malformed rationals are rejected") {
  CHECK_FALSE(try_parse_rat(""));
  CHECK_FALSE(try_parse_rat("abc"));
  CHECK_FALSE(try_parse_rat("1/0"));
  CHECK_FALSE(try_parse_rat("1.2.3"));
  CHECK_FALSE(try_parse_rat("1."));
  CHECK_THROWS_AS(rat_from_string("x"), std::invalid_argument);
}

TEST_CASE("canonical text round-trips") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    long num = static_cast<long>(rng.next_u64() % 20001) - 10000;
    long den = static_cast<long>(rng.next_u64() % 999) + 1;
    Rat r(num, den);
    CHECK(rat_from_string(rat_to_string(r)) == r);
  }
}

TEST_CASE("fixed-decimal formatting rounds half away from zero") {
  CHECK(rat_to_decimal(Rat(1, 3), 6) == "0.333333");
  CHECK(rat_to_decimal(Rat(2, 3), 2) == "0.67");
  CHECK(rat_to_decimal(Rat(1, 2), 0) == "1");
  CHECK(rat_to_decimal(Rat(-1, 2), 0) == "-1");
  CHECK(rat_to_decimal(Rat(5), 3) == "5.000");
  CHECK(rat_to_decimal(Rat(1234567, 100), 6) == "12345.670000");
  CHECK(rat_to_decimal(Rat(-1, 8), 2) == "-0.13");
}

TEST_CASE("exact bernoulli matches the 53-bit draw") {
  // p = 1 always fires, p = 0 never does, regardless of stream position.
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.bernoulli(Rat(1)));
    CHECK_FALSE(b.bernoulli(Rat(0)));
  }
}
