#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "avo/rational.hpp"
#include "doctest.h"

using avo::bigint;
using avo::Rational;

TEST_CASE("normalization") {
  Rational r(bigint(4), bigint(-6));
  CHECK(r.num() == -2);
  CHECK(r.den() == 3);
  CHECK(Rational(bigint(0), bigint(17)) == Rational(0));
  CHECK_THROWS(Rational(bigint(1), bigint(0)));
}

TEST_CASE("arithmetic") {
  Rational a(2, 3), b(7, 16);
  CHECK((a * b) == Rational(7, 24));
  CHECK((a + b) == Rational(53, 48));
  CHECK((a - b) == Rational(11, 48));
  CHECK((a / b) == Rational(32, 21));
  CHECK((-a) == Rational(-2, 3));
  CHECK_THROWS(a / Rational(0));
}

TEST_CASE("comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, 2) >= Rational(3, 2));
}

TEST_CASE("floor and ceil") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(10).ceil() == 10);
  // ceiling exactly at an integer boundary must not round up
  CHECK((Rational(29, 3) - Rational(2, 3)).ceil() == 9);
}

TEST_CASE("parse") {
  CHECK(Rational::parse("19/45") == Rational(19, 45));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("0.53") == Rational(53, 100));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-7/2") == Rational(-7, 2));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("x/y"));
}

TEST_CASE("str and conversion") {
  CHECK(Rational(7, 16).str() == "7/16");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(-2, 3).str() == "-2/3");
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(1, 3).to_long_double() == doctest::Approx(1.0L / 3.0L));
}
