// Licensed under the Apache License 2.0 (see LICENSE file).
#include <vector>

#include "doctest.h"
#include "qaw/budgets.hpp"
#include "qaw/error.hpp"
#include "qaw/term.hpp"

using namespace qaw;

TEST_CASE("signature rejects name clashes") {
  CHECK_THROWS_AS(Signature({{"x", 1}}, {"x"}), ValidationError);
  CHECK_THROWS_AS(Signature({}, {"x", "x"}), ValidationError);
  Signature sig({{"f", 2}, {"c", 0}}, {"x", "y"});
  CHECK(sig.arity("f") == 2);
  CHECK(sig.has_variable("x"));
  CHECK_FALSE(sig.has_variable("f"));
  CHECK_THROWS_AS(sig.arity("g"), ValidationError);
}

TEST_CASE("terms print in prefix form and know their depth") {
  Term x = Term::variable("x");
  Term g = Term::apply("g", {Term::variable("y")});
  Term t = Term::apply("f", {x, g});
  CHECK(t.str() == "f(x, g(y))");
  CHECK(x.depth() == 0);
  CHECK(Term::apply("c").depth() == 0);
  CHECK(Term::apply("c").str() == "c");
  CHECK(g.depth() == 1);
  CHECK(t.depth() == 2);
}

TEST_CASE("term order is depth, then head, then arguments") {
  Term c = Term::apply("c");
  Term x = Term::variable("x");
  Term y = Term::variable("y");
  Term fx = Term::apply("f", {x});
  std::vector<Term> v = {fx, y, x, c};
  std::sort(v.begin(), v.end());
  CHECK(v[0] == c);
  CHECK(v[1] == x);
  CHECK(v[2] == y);
  CHECK(v[3] == fx);
  CHECK(fx == Term::apply("f", {Term::variable("x")}));
  CHECK(fx != Term::apply("f", {y}));
}

TEST_CASE("term validation checks arity and declaredness") {
  Signature sig({{"f", 1}}, {"x"});
  CHECK_NOTHROW(validate_term(sig, Term::apply("f", {Term::variable("x")})));
  CHECK_THROWS_AS(validate_term(sig, Term::variable("w")), ValidationError);
  CHECK_THROWS_AS(validate_term(sig, Term::apply("f", {})), ValidationError);
  CHECK_THROWS_AS(validate_term(sig, Term::apply("g", {Term::variable("x")})),
                  ValidationError);
  CHECK_THROWS_AS(validate_term(sig, Term()), ValidationError);
}

TEST_CASE("substitution extends homomorphically") {
  Signature sig({{"f", 1}, {"g", 1}}, {"x", "y"});
  Substitution sub({{"x", Term::apply("f", {Term::variable("y")})}});
  Term t = Term::apply("g", {Term::variable("x")});
  CHECK(sub(t).str() == "g(f(y))");
  CHECK(apply_substitution(sig, sub, t).str() == "g(f(y))");
  CHECK(sub(Term::variable("y")) == Term::variable("y"));
}

TEST_CASE("variable and subterm collection") {
  Term t = Term::apply("f", {Term::variable("x"), Term::apply("g", {Term::variable("y")})});
  auto vars = variables_of(t);
  CHECK(vars.size() == 2);
  CHECK(vars.count("x") == 1);
  CHECK(vars.count("y") == 1);
  CHECK(subterms(t).size() == 4);
}

TEST_CASE("term enumeration is sorted, duplicate-free and capped") {
  Signature sig({{"f", 1}, {"c", 0}}, {"x", "y"});
  Budgets b;
  auto d0 = enumerate_terms(sig, {"x"}, 0, b.term_cap);
  CHECK(d0.size() == 2);
  auto d1 = enumerate_terms(sig, {"x"}, 1, b.term_cap);
  CHECK(d1.size() == 4);
  auto d2 = enumerate_terms(sig, {"x"}, 2, b.term_cap);
  CHECK(d2.size() == 6);
  CHECK(std::is_sorted(d2.begin(), d2.end()));
  CHECK_THROWS_AS(enumerate_terms(sig, {"x"}, 2, 3), BudgetError);

  Signature bin({{"f", 2}}, {"x", "y"});
  auto b1 = enumerate_terms(bin, {"x", "y"}, 1, 4096);
  CHECK(b1.size() == 6);
}
