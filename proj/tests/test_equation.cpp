// Licensed under the Apache License 2.0 (see LICENSE file).
#include "doctest.h"
#include "qaw/equation.hpp"
#include "qaw/error.hpp"

using namespace qaw;

namespace {
Term v(const char* name) { return Term::variable(name); }
QuantitativeEquation eq(const Term& l, const Term& r, const Rational& b) {
  return QuantitativeEquation(l, r, b);
}
}  // namespace

TEST_CASE("equations reject negative bounds and print with the bound inline") {
  QuantitativeEquation e = eq(v("x"), v("y"), Rational(1, 2));
  CHECK(e.str() == "x =[1/2] y");
  CHECK_THROWS_AS(eq(v("x"), v("y"), Rational(-1)), ValidationError);
}

TEST_CASE("conditional equations keep hypotheses sorted and unique") {
  QuantitativeEquation h1 = eq(v("x"), v("y"), Rational(1));
  QuantitativeEquation h2 = eq(v("y"), v("z"), Rational(2));
  ConditionalEquation ce({h2, h1, h1}, eq(v("x"), v("z"), Rational(3)));
  REQUIRE(ce.hypotheses.size() == 2);
  CHECK(ce.hypotheses[0] == h1);
  CHECK(ce.hypotheses[1] == h2);
  CHECK(ce.str() == "[x =[1] y ; y =[2] z] |- x =[3] z");
  ConditionalEquation same({h1, h2}, eq(v("x"), v("z"), Rational(3)));
  CHECK(ce == same);
}

TEST_CASE("hypothesis shape classification") {
  Term fx = Term::apply("f", {v("x")});
  Term fy = Term::apply("f", {v("y")});
  ConditionalEquation uncond({}, eq(fx, fy, Rational(1)));
  CHECK(classify(uncond) == BasicClass::Unconditional);
  ConditionalEquation fin({eq(v("x"), v("y"), Rational(1))}, eq(fx, fy, Rational(1)));
  CHECK(classify(fin) == BasicClass::FinitaryBasic);
  ConditionalEquation gen({eq(fx, v("y"), Rational(1))}, eq(v("x"), v("y"), Rational(2)));
  CHECK(classify(gen) == BasicClass::General);
  CHECK(basic_class_name(BasicClass::General) == "general");
}

TEST_CASE("c-basic means fewer than c variable-only hypotheses") {
  QuantitativeEquation h1 = eq(v("x"), v("y"), Rational(1));
  QuantitativeEquation h2 = eq(v("y"), v("z"), Rational(1));
  ConditionalEquation two({h1, h2}, eq(v("x"), v("z"), Rational(2)));
  CHECK(is_c_basic(two, 3));
  CHECK_FALSE(is_c_basic(two, 2));
  ConditionalEquation none({}, eq(v("x"), v("y"), Rational(1)));
  CHECK(is_c_basic(none, 1));
  Term fx = Term::apply("f", {v("x")});
  ConditionalEquation term_hyp({eq(fx, v("y"), Rational(1))}, eq(v("x"), v("y"), Rational(1)));
  CHECK_FALSE(is_c_basic(term_hyp, 5));
}

TEST_CASE("variable collection over a conditional equation is sorted") {
  ConditionalEquation ce({eq(v("z"), v("y"), Rational(1))}, eq(v("x"), v("y"), Rational(1)));
  auto vars = variables_of(ce);
  REQUIRE(vars.size() == 3);
  CHECK(vars[0] == "x");
  CHECK(vars[1] == "y");
  CHECK(vars[2] == "z");
}

TEST_CASE("equation validation goes through the signature") {
  Signature sig({{"f", 1}}, {"x", "y"});
  CHECK_NOTHROW(validate_equation(sig, eq(Term::apply("f", {v("x")}), v("y"), Rational(1))));
  CHECK_THROWS_AS(validate_equation(sig, eq(v("w"), v("y"), Rational(1))), ValidationError);
  ConditionalEquation bad({eq(v("x"), v("w"), Rational(1))}, eq(v("x"), v("y"), Rational(1)));
  CHECK_THROWS_AS(validate_equation(sig, bad), ValidationError);
}
