#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crp/errors.hpp"
#include "crp/rational.hpp"

using crp::Rational;

TEST_CASE("parsing integers, fractions and exact decimals") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("1.5") == Rational(3, 2));
  CHECK(Rational::parse(" 2/3 ") == Rational(2, 3));
  CHECK(Rational::parse("+10") == Rational(10));
  CHECK(Rational::parse(".5") == Rational(1, 2));
}

TEST_CASE("parse rejects malformed input") {
  for (const char* bad : {"", "a", "1/0", "1//2", "1/2/3", "1.2.3", "1e3", "--2"})
    CHECK_THROWS_AS(Rational::parse(bad), crp::error);
}

TEST_CASE("canonical form and printing") {
  CHECK(Rational(6, 8).str() == "3/4");
  CHECK(Rational(-6, 8).str() == "-3/4");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(0, 5).str() == "0");
  CHECK(Rational(3, -4) == Rational(-3, 4));
}

TEST_CASE("powers of two") {
  CHECK(Rational::pow2(0) == Rational(1));
  CHECK(Rational::pow2(4) == Rational(16));
  CHECK(Rational::pow2(-4) == Rational(1, 16));
  CHECK(Rational::pow2(81) * Rational::pow2(-81) == Rational(1));
  CHECK(Rational::pow2(81).str() == "2417851639229258349412352");
}

TEST_CASE("floor to denominator") {
  CHECK(Rational::floor_to_denominator(0.6931471805599453L, 1'000'000) == Rational(693147, 1'000'000));
  CHECK(Rational::floor_to_denominator(2.0L, 4) == Rational(2));
  CHECK(Rational::floor_to_denominator(0.0L, 10) == Rational(0));
}

TEST_CASE("arithmetic round trips on random small fractions") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 30);
  for (int trial = 0; trial < 500; ++trial) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    CHECK(a + b - b == a);
    if (!b.is_zero()) CHECK(a * b / b == a);
    CHECK((a - b) + (b - a) == Rational(0));
    CHECK((a < b) == !(a >= b));
  }
}

TEST_CASE("int64 extraction") {
  CHECK(Rational(42).as_int64() == 42);
  CHECK_THROWS_AS(Rational(1, 2).as_int64(), crp::error);
}
