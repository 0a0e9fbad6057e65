// Licensed under the Apache License 2.0 (see LICENSE file).
#include "doctest.h"
#include "qaw/error.hpp"
#include "qaw/rational.hpp"

using qaw::ExtRational;
using qaw::Rational;
using qaw::ValidationError;

TEST_CASE("rationals normalize to reduced form with positive denominator") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2).num() == -1);
  CHECK(Rational(1, -2).den() == 2);
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK_THROWS_AS(Rational(1, 0), ValidationError);
}

TEST_CASE("rational parsing accepts n and n/d only") {
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("1.5"), ValidationError);
  CHECK_THROWS_AS(Rational::parse("3/0"), ValidationError);
  CHECK_THROWS_AS(Rational::parse(""), ValidationError);
  CHECK_THROWS_AS(Rational::parse("a/b"), ValidationError);
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1).is_negative());
  CHECK(Rational(3).is_integer());
  CHECK_FALSE(Rational(1, 2).is_integer());
}

TEST_CASE("rational rendering") {
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(2).str() == "2");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("extended rationals treat infinity as absorbing and greatest") {
  ExtRational inf = ExtRational::infinity();
  ExtRational half(Rational(1, 2));
  CHECK(inf.is_infinite());
  CHECK(inf.str() == "inf");
  CHECK(half < inf);
  CHECK((inf + half).is_infinite());
  CHECK((half + half) == ExtRational(1));
  CHECK(inf == ExtRational::infinity());
  CHECK(qaw::min(inf, half) == half);
  CHECK(qaw::max(inf, half) == inf);
  CHECK(qaw::min(half, ExtRational(1)) == half);
  CHECK(ExtRational(1000) < inf);
}
