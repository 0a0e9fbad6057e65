// Licensed under the Apache License 2.0 (see LICENSE file).
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "qaw/constructions.hpp"
#include "qaw/error.hpp"
#include "qaw/qfo.hpp"

using namespace qaw;

namespace {

Term v(const char* name) { return Term::variable(name); }

ThresholdStructure two_point_structure(const ThresholdEntry& cross) {
  ThresholdEntry zero = ThresholdEntry::at(Rational(0), Flag::Closed);
  return ThresholdStructure(fixtures::empty_sig(), {"a", "b"}, {},
                            {zero, cross, cross, zero});
}

}  // namespace

TEST_CASE("threshold entries are rays with exact membership") {
  ThresholdEntry closed = ThresholdEntry::at(Rational(1), Flag::Closed);
  ThresholdEntry open = ThresholdEntry::at(Rational(1), Flag::Open);
  ThresholdEntry never = ThresholdEntry::infinite();
  CHECK(closed.contains(Rational(1)));
  CHECK_FALSE(open.contains(Rational(1)));
  CHECK(open.contains(Rational(3, 2)));
  CHECK_FALSE(never.contains(Rational(1000)));
  CHECK(closed.str() == "bound 1 closed");
  CHECK(open.str() == "bound 1 open");
  CHECK(never.str() == "infinite");
  CHECK(open.subset_of(closed));
  CHECK_FALSE(closed.subset_of(open));
}

TEST_CASE("ray intersection keeps the stricter flag at equal bounds") {
  ThresholdEntry closed = ThresholdEntry::at(Rational(1), Flag::Closed);
  ThresholdEntry open = ThresholdEntry::at(Rational(1), Flag::Open);
  CHECK(intersect(closed, open) == open);
  CHECK(intersect(closed, ThresholdEntry::at(Rational(2), Flag::Closed)) ==
        ThresholdEntry::at(Rational(2), Flag::Closed));
  CHECK(intersect(closed, ThresholdEntry::infinite()) == ThresholdEntry::infinite());
  CHECK(ray_sum(closed, ThresholdEntry::at(Rational(1, 2), Flag::Closed)) ==
        ThresholdEntry::at(Rational(3, 2), Flag::Closed));
  CHECK(ray_sum(closed, open) == ThresholdEntry::at(Rational(2), Flag::Open));
  CHECK(ray_sum(closed, ThresholdEntry::infinite()) == ThresholdEntry::infinite());
}

TEST_CASE("the six structure axioms are checked individually") {
  ThresholdStructure fine = two_point_structure(ThresholdEntry::at(Rational(1), Flag::Closed));
  QfoAxiomReport ok = check_qfo_axioms(fine);
  CHECK(ok.all_pass());
  CHECK(ok.failing().empty());

  ThresholdStructure open_pair =
      two_point_structure(ThresholdEntry::at(Rational(1), Flag::Open));
  QfoAxiomReport flagged = check_qfo_axioms(open_pair);
  CHECK_FALSE(flagged.all_pass());
  CHECK(flagged.failing() == std::vector<int>{6});

  ThresholdStructure merged =
      two_point_structure(ThresholdEntry::at(Rational(0), Flag::Closed));
  CHECK_FALSE(check_qfo_axioms(merged).axioms[0].ok);

  ThresholdEntry zero = ThresholdEntry::at(Rational(0), Flag::Closed);
  ThresholdEntry one = ThresholdEntry::at(Rational(1), Flag::Closed);
  ThresholdEntry two = ThresholdEntry::at(Rational(2), Flag::Closed);
  ThresholdStructure skew(fixtures::empty_sig(), {"a", "b"}, {}, {zero, one, two, zero});
  CHECK_FALSE(check_qfo_axioms(skew).axioms[1].ok);

  ThresholdEntry three = ThresholdEntry::at(Rational(3), Flag::Closed);
  ThresholdStructure stretched(fixtures::empty_sig(), {"a", "b", "c"}, {},
                               {zero, one, three, one, zero, one, three, one, zero});
  CHECK_FALSE(check_qfo_axioms(stretched).axioms[2].ok);
}

TEST_CASE("operations must respect thresholds") {
  ThresholdEntry zero = ThresholdEntry::at(Rational(0), Flag::Closed);
  ThresholdEntry one = ThresholdEntry::at(Rational(1), Flag::Closed);
  ThresholdEntry two = ThresholdEntry::at(Rational(2), Flag::Closed);
  OpTable f;
  f.arity = 1;
  f.table = {0, 2, 2};
  ThresholdStructure m(fixtures::unary_sig(), {"a", "b", "c"}, {{"f", f}},
                       {zero, one, two, one, zero, one, two, one, zero});
  QfoAxiomReport rep = check_qfo_axioms(m);
  CHECK_FALSE(rep.axioms[4].ok);
}

TEST_CASE("the functors between algebras and structures invert each other") {
  FiniteQuantitativeAlgebra a = fixtures::two_point_unary(ExtRational(1), true);
  ThresholdStructure m = to_qfo(a);
  CHECK(m.entry("a", "b") == ThresholdEntry::at(Rational(1), Flag::Closed));
  CHECK(check_qfo_axioms(m).all_pass());
  CHECK(to_algebra(m).same_as(a));

  FiniteQuantitativeAlgebra far = fixtures::two_point(ExtRational::infinity());
  ThresholdStructure mf = to_qfo(far);
  CHECK(mf.entry("a", "b") == ThresholdEntry::infinite());
  CHECK(to_algebra(mf).same_as(far));

  ThresholdStructure open_pair =
      two_point_structure(ThresholdEntry::at(Rational(1), Flag::Open));
  CHECK_THROWS_AS(to_algebra(open_pair), ValidationError);
  try {
    to_algebra(open_pair);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("6") != std::string::npos);
  }
}

TEST_CASE("reduced products over the full filter match the direct product image") {
  Budgets b;
  Signature sig = fixtures::empty_sig();
  FiniteQuantitativeAlgebra d1 = fixtures::two_point(ExtRational(1));
  FiniteQuantitativeAlgebra d2 = fixtures::two_point(ExtRational(2));
  ThresholdStructure m1 = to_qfo(d1);
  ThresholdStructure m2 = to_qfo(d2);

  FilterSpec full{2, {0, 1}};
  ThresholdStructure rp = reduced_product({m1, m2}, full, b);
  ThresholdStructure direct = to_qfo(direct_product(sig, {d1, d2}, b));
  CHECK(rp.same_as(direct));
  CHECK(check_qfo_axioms(rp).axioms[5].ok);

  FilterSpec second{2, {1}};
  ThresholdStructure proj = reduced_product({m1, m2}, second, b);
  CHECK(proj.size() == 2);
  CHECK(proj.carrier()[0] == "(a)");
  CHECK(proj.entry(0, 1) == m2.entry(0, 1));

  FilterSpec improper{2, {}};
  CHECK_THROWS_AS(reduced_product({m1, m2}, improper, b), ValidationError);
}

TEST_CASE("subobjects require operation closure") {
  OpTable f;
  f.arity = 1;
  f.table = {0, 0};
  ThresholdEntry zero = ThresholdEntry::at(Rational(0), Flag::Closed);
  ThresholdEntry one = ThresholdEntry::at(Rational(1), Flag::Closed);
  ThresholdStructure m(fixtures::unary_sig(), {"a", "b"}, {{"f", f}}, {zero, one, one, zero});
  ThresholdStructure s = subobject(m, {"a"});
  CHECK(s.size() == 1);
  OpTable g;
  g.arity = 1;
  g.table = {1, 1};
  ThresholdStructure m2(fixtures::unary_sig(), {"a", "b"}, {{"f", g}}, {zero, one, one, zero});
  CHECK_THROWS_AS(subobject(m2, {"a"}), ValidationError);
}

TEST_CASE("subreduced product membership is decided by embedding search") {
  Budgets b;
  FiniteQuantitativeAlgebra d1 = fixtures::two_point(ExtRational(1));
  ThresholdStructure m1 = to_qfo(d1);
  FilterSpec full{2, {0, 1}};
  ThresholdStructure rp = reduced_product({m1, m1}, full, b);
  CHECK(is_subreduced_product(rp, {m1, m1}, full, b));
  ThresholdStructure diag = subobject(rp, {"(a, a)", "(b, b)"});
  CHECK(is_subreduced_product(diag, {m1, m1}, full, b));

  ThresholdStructure open_pair =
      two_point_structure(ThresholdEntry::at(Rational(1), Flag::Open));
  CHECK_FALSE(is_subreduced_product(open_pair, {m1, m1}, full, b));

  ThresholdStructure stretched =
      two_point_structure(ThresholdEntry::at(Rational(7), Flag::Closed));
  CHECK_FALSE(is_subreduced_product(stretched, {m1, m1}, full, b));
}

TEST_CASE("universal Horn evaluation is exhaustive with witnesses") {
  FiniteQuantitativeAlgebra d1 = fixtures::two_point(ExtRational(1));
  ThresholdStructure m = to_qfo(d1);

  HornFormula refl{{"x"}, {}, HornAtom::threshold(v("x"), v("x"), Rational(0))};
  CHECK(eval_horn(m, refl).holds);

  HornFormula tight{{"x", "y"}, {}, HornAtom::threshold(v("x"), v("y"), Rational(1, 2))};
  HornResult r = eval_horn(m, tight);
  CHECK_FALSE(r.holds);
  CHECK(r.counterexample.has_value());

  HornFormula up{{"x", "y"},
                 {HornAtom::threshold(v("x"), v("y"), Rational(1))},
                 HornAtom::threshold(v("x"), v("y"), Rational(2))};
  CHECK(eval_horn(m, up).holds);

  HornFormula eq_atom{{"x", "y"},
                      {HornAtom::threshold(v("x"), v("y"), Rational(0))},
                      HornAtom::equality(v("x"), v("y"))};
  CHECK(eval_horn(m, eq_atom).holds);

  HornFormula unbound{{"x"}, {}, HornAtom::threshold(v("x"), v("y"), Rational(0))};
  CHECK_THROWS_AS(eval_horn(m, unbound), ValidationError);
}

TEST_CASE("conditional equations and Horn formulas translate both ways") {
  Signature sig = fixtures::unary_sig();
  Term fx = Term::apply("f", {v("x")});
  Term fy = Term::apply("f", {v("y")});
  ConditionalEquation ce({QuantitativeEquation(v("x"), v("y"), Rational(1))},
                         QuantitativeEquation(fx, fy, Rational(1)));
  HornFormula phi = horn_of_conditional(ce);
  CHECK(phi.str() == "forall x y . (x =[1] y) -> f(x) =[1] f(y)");
  CHECK(conditional_of_horn(phi) == ce);

  ConditionalEquation uncond({}, QuantitativeEquation(v("x"), v("y"), Rational(2)));
  HornFormula empty_body = horn_of_conditional(uncond);
  CHECK(empty_body.body.empty());
  CHECK(conditional_of_horn(empty_body) == uncond);

  HornFormula with_eq{{"x", "y"}, {HornAtom::equality(v("x"), v("y"))},
                      HornAtom::threshold(fx, fy, Rational(0))};
  ConditionalEquation back = conditional_of_horn(with_eq);
  CHECK(back.hypotheses.size() == 1);
  CHECK(back.hypotheses[0].bound == Rational(0));
}

TEST_CASE("satisfaction transfers through the functor on concrete pairs") {
  FiniteQuantitativeAlgebra swap = fixtures::two_point_unary(ExtRational(1), true);
  Term fx = Term::apply("f", {v("x")});
  Term fy = Term::apply("f", {v("y")});
  ConditionalEquation ce({QuantitativeEquation(v("x"), v("y"), Rational(1))},
                         QuantitativeEquation(fx, fy, Rational(1)));
  CHECK(satisfies(swap, ce).holds ==
        eval_horn(to_qfo(swap), horn_of_conditional(ce)).holds);

  ConditionalEquation tight({}, QuantitativeEquation(v("x"), v("y"), Rational(1, 2)));
  CHECK(satisfies(swap, tight).holds ==
        eval_horn(to_qfo(swap), horn_of_conditional(tight)).holds);
  CHECK_FALSE(eval_horn(to_qfo(swap), horn_of_conditional(tight)).holds);
}
