// Licensed under the Apache License 2.0 (see LICENSE file).
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "qaw/algebra.hpp"
#include "qaw/constructions.hpp"
#include "qaw/error.hpp"

using namespace qaw;

namespace {

Term v(const char* name) { return Term::variable(name); }

QuantitativeEquation eq(const Term& l, const Term& r, const Rational& b) {
  return QuantitativeEquation(l, r, b);
}

FiniteQuantitativeAlgebra three_point_path(const ExtRational& dab, const ExtRational& dbc,
                                           const ExtRational& dac) {
  ExtRational z(0);
  std::vector<ExtRational> dist = {z, dab, dac, dab, z, dbc, dac, dbc, z};
  return FiniteQuantitativeAlgebra(fixtures::empty_sig(), {"a", "b", "c"}, {}, dist);
}

}  // namespace

TEST_CASE("construction checks shapes, validation checks semantics") {
  OpTable f;
  f.arity = 1;
  f.table = {0};
  CHECK_THROWS_AS(FiniteQuantitativeAlgebra(fixtures::unary_sig(), {"a", "b"}, {{"f", f}},
                                            std::vector<ExtRational>(4, ExtRational(0))),
                  ValidationError);

  FiniteQuantitativeAlgebra good = fixtures::two_point_unary(ExtRational(1), true);
  CHECK(validate_algebra(good).ok);
  CHECK(good.index_of("b") == 1);
  CHECK(good.index_of("q") == -1);
  CHECK(good.distance("a", "b") == ExtRational(1));
  CHECK(good.op_apply("f", {0}) == 1);
}

TEST_CASE("validation lists metric violations") {
  FiniteQuantitativeAlgebra glued = fixtures::two_point(ExtRational(0));
  Verdict sep = validate_algebra(glued);
  CHECK_FALSE(sep.ok);

  std::vector<ExtRational> asym = {ExtRational(0), ExtRational(1), ExtRational(2),
                                   ExtRational(0)};
  FiniteQuantitativeAlgebra skew(fixtures::empty_sig(), {"a", "b"}, {}, asym);
  CHECK_FALSE(validate_algebra(skew).ok);

  CHECK_FALSE(validate_algebra(three_point_path(ExtRational(1), ExtRational(1), ExtRational(3))).ok);
  CHECK(validate_algebra(three_point_path(ExtRational(1), ExtRational(2), ExtRational(3))).ok);
}

TEST_CASE("validation catches expansive operations") {
  OpTable f;
  f.arity = 1;
  f.table = {0, 2, 2};
  ExtRational z(0), one(1), two(2);
  std::vector<ExtRational> dist = {z, one, two, one, z, one, two, one, z};
  FiniteQuantitativeAlgebra a(fixtures::unary_sig(), {"a", "b", "c"}, {{"f", f}}, dist);
  Verdict verd = validate_algebra(a);
  CHECK_FALSE(verd.ok);
  CHECK(verd.summary().find("f") != std::string::npos);
}

TEST_CASE("evaluation walks the tables") {
  FiniteQuantitativeAlgebra swap = fixtures::two_point_unary(ExtRational(1), true);
  Assignment al = {{"x", "a"}};
  Term ffx = Term::apply("f", {Term::apply("f", {v("x")})});
  CHECK(evaluate(swap, al, ffx) == "a");
  CHECK(evaluate(swap, al, Term::apply("f", {v("x")})) == "b");
  CHECK_THROWS_AS(evaluate(swap, {}, v("x")), ValidationError);
  CHECK_THROWS_AS(evaluate(swap, {{"x", "zz"}}, v("x")), ValidationError);
}

TEST_CASE("compiled term programs agree with the interpreter") {
  FiniteQuantitativeAlgebra swap = fixtures::two_point_unary(ExtRational(1), true);
  Term fx = Term::apply("f", {v("x")});
  Term ffy = Term::apply("f", {Term::apply("f", {v("y")})});
  TermProgram prog({fx, ffy, v("y")}, {"x", "y"});
  prog.bind(swap.ops(), swap.size());
  std::vector<int> vals;
  for (int xi = 0; xi < 2; ++xi) {
    for (int yi = 0; yi < 2; ++yi) {
      int assign[2] = {xi, yi};
      prog.run(assign, vals);
      Assignment al = {{"x", swap.element(xi)}, {"y", swap.element(yi)}};
      CHECK(vals[prog.root(0)] == evaluate_index(swap, al, fx));
      CHECK(vals[prog.root(1)] == evaluate_index(swap, al, ffy));
      CHECK(vals[prog.root(2)] == yi);
    }
  }
  CHECK_THROWS_AS(TermProgram({v("w")}, {"x"}), ValidationError);
}

TEST_CASE("satisfaction quantifies over assignments of occurring variables") {
  FiniteQuantitativeAlgebra a = fixtures::two_point(ExtRational(1));
  ConditionalEquation within_one({}, eq(v("x"), v("y"), Rational(1)));
  CHECK(satisfies(a, within_one).holds);

  ConditionalEquation too_tight({}, eq(v("x"), v("y"), Rational(1, 2)));
  SatisfactionResult r = satisfies(a, too_tight);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  const Assignment& w = *r.counterexample;
  CHECK(a.distance(w.at("x"), w.at("y")) > ExtRational(Rational(1, 2)));

  ConditionalEquation assumpt({eq(v("x"), v("y"), Rational(0))},
                              eq(v("x"), v("y"), Rational(0)));
  CHECK(satisfies(a, assumpt).holds);

  FiniteQuantitativeAlgebra point = fixtures::one_point(fixtures::empty_sig());
  CHECK(satisfies(point, too_tight).holds);

  CHECK(satisfies_theory(a, {within_one, assumpt}).holds);
  CHECK_FALSE(satisfies_theory(a, {within_one, too_tight}).holds);
}

TEST_CASE("homomorphisms must commute with operations and stay non-expansive") {
  FiniteQuantitativeAlgebra d1 = fixtures::two_point_unary(ExtRational(1), false);
  FiniteQuantitativeAlgebra d2 = fixtures::two_point_unary(ExtRational(2), false);

  HomomorphismWitness ident{d1, d1, {{"a", "a"}, {"b", "b"}}};
  CHECK(is_homomorphism(ident).ok);
  CHECK(is_surjective(ident));

  HomomorphismWitness shrink{d2, d1, {{"a", "a"}, {"b", "b"}}};
  CHECK(is_homomorphism(shrink).ok);

  HomomorphismWitness stretch{d1, d2, {{"a", "a"}, {"b", "b"}}};
  CHECK_FALSE(is_homomorphism(stretch).ok);

  FiniteQuantitativeAlgebra swap = fixtures::two_point_unary(ExtRational(1), true);
  HomomorphismWitness breaks_ops{swap, d1, {{"a", "a"}, {"b", "b"}}};
  CHECK_FALSE(is_homomorphism(breaks_ops).ok);
}

TEST_CASE("reflexivity degree separates isometric from merely non-expansive maps") {
  FiniteQuantitativeAlgebra d1 = fixtures::two_point(ExtRational(1));
  FiniteQuantitativeAlgebra d2 = fixtures::two_point(ExtRational(2));
  HomomorphismWitness shrink{d2, d1, {{"a", "a"}, {"b", "b"}}};
  REQUIRE(is_homomorphism(shrink).ok);
  CHECK(is_c_reflexive(shrink, 1));
  CHECK(is_c_reflexive(shrink, 2));
  CHECK_FALSE(is_c_reflexive(shrink, 3));

  HomomorphismWitness ident{d1, d1, {{"a", "a"}, {"b", "b"}}};
  for (std::size_t c = 1; c <= 4; ++c) CHECK(is_c_reflexive(ident, c));
}

TEST_CASE("images and induced subalgebras") {
  FiniteQuantitativeAlgebra d1 = fixtures::two_point(ExtRational(1));
  FiniteQuantitativeAlgebra point = fixtures::one_point(fixtures::empty_sig());
  HomomorphismWitness collapse{d1, point, {{"a", "p"}, {"b", "p"}}};
  REQUIRE(is_homomorphism(collapse).ok);
  CHECK(image_algebra(collapse).size() == 1);

  FiniteQuantitativeAlgebra swap = fixtures::two_point_unary(ExtRational(1), true);
  CHECK_THROWS_AS(induced_subalgebra(swap, {"a"}), ValidationError);
  FiniteQuantitativeAlgebra idf = fixtures::two_point_unary(ExtRational(1), false);
  FiniteQuantitativeAlgebra sub = induced_subalgebra(idf, {"a"});
  CHECK(sub.size() == 1);
  CHECK(is_subalgebra_of(sub, idf).ok);
}

TEST_CASE("congruences become 0/1 pseudometrics, non-congruences are refused") {
  FiniteQuantitativeAlgebra idf = fixtures::two_point_unary(ExtRational(1), false);
  auto discrete = congruence_to_pseudometric(idf, {{"a"}, {"b"}});
  CHECK(discrete[0] == ExtRational(0));
  CHECK(discrete[1] == ExtRational(1));
  auto total = congruence_to_pseudometric(idf, {{"a", "b"}});
  CHECK(total[1] == ExtRational(0));

  OpTable f;
  f.arity = 1;
  f.table = {0, 2, 2};
  ExtRational z(0), one(1);
  std::vector<ExtRational> dist = {z, one, one, one, z, one, one, one, z};
  FiniteQuantitativeAlgebra tri(fixtures::unary_sig(), {"a", "b", "c"}, {{"f", f}}, dist);
  CHECK_THROWS_AS(congruence_to_pseudometric(tri, {{"a", "b"}, {"c"}}), ValidationError);
  CHECK_THROWS_AS(congruence_to_pseudometric(tri, {{"a"}, {"b"}}), ValidationError);
  CHECK_THROWS_AS(congruence_to_pseudometric(tri, {{"a", "a"}, {"b", "c"}}), ValidationError);
}

TEST_CASE("algebra enumeration is exhaustive and canonical") {
  Budgets b;
  std::vector<ExtRational> grid = {ExtRational(Rational(1, 2)), ExtRational(1)};
  std::vector<FiniteQuantitativeAlgebra> seen;
  enumerate_algebras(fixtures::empty_sig(), {"a", "b"}, grid, b,
                     [&](const FiniteQuantitativeAlgebra& a) {
                       seen.push_back(a);
                       return true;
                     });
  CHECK(seen.size() == 2);
  for (const auto& a : seen) CHECK(validate_algebra(a).ok);

  Signature with_const({{"c", 0}}, {"x"});
  std::vector<FiniteQuantitativeAlgebra> seen2;
  enumerate_algebras(with_const, {"a", "b"}, grid, b,
                     [&](const FiniteQuantitativeAlgebra& a) {
                       seen2.push_back(a);
                       return true;
                     });
  CHECK(seen2.size() == 4);

  std::vector<FiniteQuantitativeAlgebra> again;
  enumerate_algebras(with_const, {"a", "b"}, grid, b,
                     [&](const FiniteQuantitativeAlgebra& a) {
                       again.push_back(a);
                       return true;
                     });
  REQUIRE(again.size() == seen2.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].same_as(seen2[i]));

  std::size_t stopped = 0;
  enumerate_algebras(with_const, {"a", "b"}, grid, b,
                     [&](const FiniteQuantitativeAlgebra&) {
                       ++stopped;
                       return false;
                     });
  CHECK(stopped == 1);
}

TEST_CASE("countermodel grid covers sums of bounds plus the extremes") {
  QuantitativeEquation h1 = eq(v("x"), v("y"), Rational(1));
  QuantitativeEquation h2 = eq(v("y"), v("z"), Rational(2));
  QuantitativeEquation goal = eq(v("x"), v("z"), Rational(1));
  auto grid = countermodel_grid({h1, h2}, goal, 2);
  bool has_zero = false, has_inf = false, has_three = false;
  for (const auto& g : grid) {
    if (g.is_zero()) has_zero = true;
    if (g.is_infinite()) has_inf = true;
    if (g == ExtRational(3)) has_three = true;
  }
  CHECK(has_zero);
  CHECK(has_inf);
  CHECK(has_three);
}

TEST_CASE("countermodel search separates derivable from underivable goals") {
  Signature sig = fixtures::empty_sig();
  Budgets b;
  QuantitativeEquation h = eq(v("x"), v("y"), Rational(1));

  auto hit = search_countermodel(sig, {h}, eq(v("x"), v("y"), Rational(1, 2)), 2, b);
  REQUIRE(hit.has_value());
  CHECK(validate_algebra(hit->algebra).ok);
  const Assignment& al = hit->assignment;
  CHECK(hit->algebra.distance(al.at("x"), al.at("y")) <= ExtRational(1));
  CHECK(hit->algebra.distance(al.at("x"), al.at("y")) > ExtRational(Rational(1, 2)));

  auto none = search_countermodel(sig, {}, eq(v("x"), v("x"), Rational(0)), 2, b);
  CHECK_FALSE(none.has_value());

  QuantitativeEquation h2 = eq(v("y"), v("z"), Rational(1));
  auto path = search_countermodel(sig, {h, h2}, eq(v("x"), v("z"), Rational(1)), 3, b);
  REQUIRE(path.has_value());
  const Assignment& pa = path->assignment;
  CHECK(path->algebra.distance(pa.at("x"), pa.at("z")) > ExtRational(1));
  CHECK(path->algebra.distance(pa.at("x"), pa.at("z")) <= ExtRational(2));
}
