// Licensed under the Apache License 2.0 (see LICENSE file).
#include <string>

#include "doctest.h"
#include "qaw/dsl.hpp"
#include "qaw/error.hpp"

using namespace qaw;

namespace {

const char kFull[] =
    "signature { f/1; c/0 }\n"
    "vars { x y }\n"
    "algebra A {\n"
    "  carrier { a b };\n"
    "  op f(a) = a;\n"
    "  op f(b) = b;\n"
    "  op c = a;\n"
    "  dist a b = 1;\n"
    "}\n"
    "theory T {\n"
    "  [x =[1] y] |- f(x) =[1] f(y);\n"
    "  [] |- x =[2] y;\n"
    "}\n"
    "structure M {\n"
    "  carrier { m n };\n"
    "  op f(m) = m;\n"
    "  op f(n) = n;\n"
    "  op c = m;\n"
    "  pair m n : bound 3/2 closed;\n"
    "}\n"
    "formula H {\n"
    "  forall x y . (x =[1] y) -> f(x) =[1] f(y);\n"
    "}\n";

}  // namespace

TEST_CASE("a full workspace parses into named objects") {
  Workspace ws = parse_workspace(kFull);
  CHECK(ws.sig.arity("f") == 1);
  CHECK(ws.sig.variables().size() == 2);
  REQUIRE(ws.algebras.count("A") == 1);
  REQUIRE(ws.theories.count("T") == 1);
  REQUIRE(ws.structures.count("M") == 1);
  REQUIRE(ws.formulas.count("H") == 1);

  const FiniteQuantitativeAlgebra& a = ws.algebras.at("A");
  CHECK(a.size() == 2);
  CHECK(a.distance("a", "b") == ExtRational(1));

  const auto& axioms = ws.theories.at("T");
  REQUIRE(axioms.size() == 2);
  CHECK(axioms[1].hypotheses.empty());

  const ThresholdStructure& m = ws.structures.at("M");
  CHECK(m.entry("m", "n") == ThresholdEntry::at(Rational(3, 2), Flag::Closed));
}

TEST_CASE("a minimal workspace is a signature and a point") {
  Workspace ws = parse_workspace(
      "signature { }\nvars { x }\nalgebra P { carrier { p }; }\n");
  CHECK(ws.algebras.size() == 1);
  CHECK(ws.algebras.at("P").size() == 1);
  CHECK(ws.algebras.at("P").distance(0, 0) == ExtRational(0));
}

TEST_CASE("halves parse to exact rationals") {
  Workspace ws = parse_workspace(
      "signature { }\nvars { x y }\ntheory T { [] |- x =[1/2] y; }\n");
  CHECK(ws.theories.at("T")[0].conclusion.bound == Rational(1, 2));
}

TEST_CASE("infinite distances use the inf keyword") {
  Workspace ws = parse_workspace(
      "signature { }\nvars { x }\nalgebra A { carrier { a b }; dist a b = inf; }\n");
  CHECK(ws.algebras.at("A").distance("a", "b").is_infinite());
}

TEST_CASE("errors carry the source position and name the problem") {
  std::string missing =
      "signature { }\nvars { x }\nalgebra A { carrier { a b }; }\n";
  try {
    parse_workspace(missing);
    FAIL("missing distance should be rejected");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line") != std::string::npos);
    CHECK(msg.find("a") != std::string::npos);
    CHECK(msg.find("b") != std::string::npos);
  }

  std::string unknown =
      "signature { }\nvars { x }\ntheory T { [] |- x =[1] w; }\n";
  try {
    parse_workspace(unknown);
    FAIL("unknown identifier should be rejected");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("w") != std::string::npos);
  }

  std::string partial =
      "signature { f/2 }\nvars { x }\n"
      "algebra A { carrier { a }; op f(a, a) = a; dist a a = 0; }\n"
      "algebra B { carrier { a b }; op f(a, a) = a; dist a b = 1; }\n";
  CHECK_THROWS_AS(parse_workspace(partial), ValidationError);

  CHECK_THROWS_AS(
      parse_workspace("signature { }\nvars { x }\nalgebra A { carrier { a }; }\n"
                      "algebra A { carrier { b }; }\n"),
      ValidationError);
}

TEST_CASE("printing then parsing reproduces the workspace byte for byte") {
  Workspace ws = parse_workspace(kFull);
  std::string printed = print_workspace(ws);
  Workspace back = parse_workspace(printed);
  CHECK(print_workspace(back) == printed);
  CHECK(back.algebras.at("A").same_as(ws.algebras.at("A")));
  CHECK(back.structures.at("M").same_as(ws.structures.at("M")));
  CHECK(back.theories.at("T") == ws.theories.at("T"));
  CHECK(back.formulas.at("H").str() == ws.formulas.at("H").str());
}

TEST_CASE("judgments parse with and without hypothesis lists") {
  Workspace ws = parse_workspace("signature { f/1 }\nvars { x y }\n");
  ConditionalEquation ce = parse_judgment(ws.sig, "[x =[1] y] |- f(x) =[1] f(y)");
  CHECK(ce.hypotheses.size() == 1);
  ConditionalEquation bare = parse_judgment(ws.sig, "x =[2] y");
  CHECK(bare.hypotheses.empty());
  CHECK(bare.conclusion.bound == Rational(2));
  CHECK_THROWS_AS(parse_judgment(ws.sig, "x =[2]"), ValidationError);

  Term t = parse_term_text(ws.sig, "f(f(x))");
  CHECK(t.depth() == 2);
  HornFormula phi = parse_formula_text(ws.sig, "forall x . () -> x =[0] x");
  CHECK(phi.body.empty());
}

TEST_CASE("synthesized carriers rename to plain identifiers with a manifest") {
  Workspace ws = parse_workspace(kFull);
  const FiniteQuantitativeAlgebra& a = ws.algebras.at("A");
  FiniteQuantitativeAlgebra odd(
      Signature({}, {"x"}), {"(a, a)", "(a, b)"}, {},
      {ExtRational(0), ExtRational(1), ExtRational(1), ExtRational(0)});
  RenamedAlgebra ra = rename_carrier(odd);
  CHECK(ra.algebra.carrier()[0] == "e0");
  CHECK(ra.algebra.carrier()[1] == "e1");
  REQUIRE(ra.manifest.size() == 2);
  CHECK(ra.manifest[0].second == "(a, a)");

  Workspace back = parse_workspace("signature { }\nvars { x }\n" +
                                   print_algebra("R", ra.algebra));
  CHECK(back.algebras.at("R").same_as(ra.algebra));

  ThresholdEntry zero = ThresholdEntry::at(Rational(0), Flag::Closed);
  ThresholdEntry one = ThresholdEntry::at(Rational(1), Flag::Closed);
  ThresholdStructure odd_m(Signature({}, {"x"}), {"(m)", "(n)"}, {}, {zero, one, one, zero});
  RenamedStructure rm = rename_carrier(odd_m);
  CHECK(rm.structure.carrier()[0] == "e0");
  CHECK(rm.manifest[1].first == "e1");
  CHECK(a.size() == 2);
}
