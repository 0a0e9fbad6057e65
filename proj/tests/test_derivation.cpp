// Licensed under the Apache License 2.0 (see LICENSE file).
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "qaw/derivation.hpp"
#include "qaw/error.hpp"

using namespace qaw;

namespace {

Term v(const char* name) { return Term::variable(name); }

QuantitativeEquation eq(const Term& l, const Term& r, const Rational& b) {
  return QuantitativeEquation(l, r, b);
}

SaturationResult saturate(const Signature& sig,
                          const std::vector<QuantitativeEquation>& hyps,
                          const QuantitativeEquation& goal,
                          const std::vector<ConditionalEquation>& axioms,
                          bool record = false) {
  Budgets b;
  std::vector<Term> universe = build_universe(sig, hyps, goal, axioms, b);
  return least_derivable_distance(sig, hyps, axioms, universe, b, record);
}

}  // namespace

TEST_CASE("chaining two hypotheses gives the sum of the bounds and no less") {
  Signature sig = fixtures::empty_sig();
  std::vector<QuantitativeEquation> hyps = {eq(v("x"), v("y"), Rational(1)),
                                            eq(v("y"), v("z"), Rational(2))};
  SaturationResult sat = saturate(sig, hyps, eq(v("x"), v("z"), Rational(3)), {});
  CHECK(sat.table.bound(v("x"), v("z")) == ExtRational(3));
  CHECK(sat.table.bound(v("z"), v("x")) == ExtRational(3));
  CHECK(sat.table.bound(v("x"), v("y")) == ExtRational(1));
  CHECK(sat.table.bound(v("x"), v("x")) == ExtRational(0));
}

TEST_CASE("a hypothesis pushes through a unary symbol unchanged") {
  Signature sig = fixtures::unary_sig();
  Term fx = Term::apply("f", {v("x")});
  Term fy = Term::apply("f", {v("y")});
  std::vector<QuantitativeEquation> hyps = {eq(v("x"), v("y"), Rational(1))};
  SaturationResult sat = saturate(sig, hyps, eq(fx, fy, Rational(1)), {});
  CHECK(sat.table.bound(fx, fy) == ExtRational(1));
}

TEST_CASE("self-distance derives to zero with no hypotheses") {
  Signature sig = fixtures::empty_sig();
  SaturationResult sat = saturate(sig, {}, eq(v("x"), v("x"), Rational(0)), {});
  CHECK(sat.table.bound(v("x"), v("x")) == ExtRational(0));
  CHECK_THROWS_AS(sat.table.bound(v("x"), v("y")), ValidationError);

  SaturationResult apart = saturate(sig, {}, eq(v("x"), v("y"), Rational(1)), {});
  CHECK(apart.table.bound(v("x"), v("y")).is_infinite());
  CHECK(apart.table.bound(v("y"), v("y")) == ExtRational(0));
}

TEST_CASE("axioms lower bounds and never raise them") {
  Signature sig = fixtures::unary_sig();
  Term fx = Term::apply("f", {v("x")});
  QuantitativeEquation goal = eq(fx, v("x"), Rational(0));
  SaturationResult plain = saturate(sig, {}, goal, {});
  CHECK(plain.table.bound(fx, v("x")).is_infinite());

  std::vector<ConditionalEquation> axioms = {ConditionalEquation({}, eq(fx, v("x"), Rational(0)))};
  SaturationResult with = saturate(sig, {}, goal, axioms);
  CHECK(with.table.bound(fx, v("x")) == ExtRational(0));

  for (std::size_t i = 0; i < plain.table.universe().size(); ++i) {
    const Term& s = plain.table.universe()[i];
    for (std::size_t j = 0; j < plain.table.universe().size(); ++j) {
      const Term& t = plain.table.universe()[j];
      int wi = with.table.index_of(s);
      int wj = with.table.index_of(t);
      if (wi < 0 || wj < 0) continue;
      CHECK(with.table.bound(wi, wj) <= plain.table.bound(static_cast<int>(i), static_cast<int>(j)));
    }
  }
}

TEST_CASE("universe construction is deterministic and capped") {
  Signature sig = fixtures::unary_sig();
  Term ffx = Term::apply("f", {Term::apply("f", {v("x")})});
  QuantitativeEquation goal = eq(ffx, v("x"), Rational(0));
  std::vector<ConditionalEquation> axioms = {
      ConditionalEquation({}, eq(Term::apply("f", {v("x")}), v("x"), Rational(0)))};
  Budgets b;
  auto u1 = build_universe(sig, {}, goal, axioms, b);
  auto u2 = build_universe(sig, {}, goal, axioms, b);
  CHECK(u1 == u2);
  bool has_fx = false;
  for (const auto& t : u1) {
    if (t == Term::apply("f", {v("x")})) has_fx = true;
  }
  CHECK(has_fx);
  Budgets tiny = b;
  tiny.term_cap = 2;
  CHECK_THROWS_AS(build_universe(sig, {}, goal, axioms, tiny), BudgetError);
}

TEST_CASE("recorded proofs pass the checker and tampered ones fail") {
  Signature sig = fixtures::empty_sig();
  std::vector<QuantitativeEquation> hyps = {eq(v("x"), v("y"), Rational(1)),
                                            eq(v("y"), v("z"), Rational(2))};
  SaturationResult sat = saturate(sig, hyps, eq(v("x"), v("z"), Rational(3)), {}, true);
  ProofObject proof = sat.proof_for(v("x"), v("z"), Rational(3));
  REQUIRE(!proof.steps.empty());
  ProofCheckResult ok = check_proof(proof, {});
  CHECK(ok.ok);

  ProofObject relaxed = sat.proof_for(v("x"), v("z"), Rational(4));
  CHECK(check_proof(relaxed, {}).ok);

  ProofObject tampered = proof;
  tampered.steps.back().conclusion =
      eq(tampered.steps.back().conclusion.left, tampered.steps.back().conclusion.right,
         Rational(1, 2));
  ProofCheckResult bad = check_proof(tampered, {});
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.reason.empty());
}

TEST_CASE("proof checker rejects rule misuse step by step") {
  std::vector<ConditionalEquation> no_axioms;

  ProofObject fake_refl;
  fake_refl.steps.emplace_back(Rule::Refl, std::vector<QuantitativeEquation>{},
                               eq(v("x"), v("y"), Rational(0)));
  CHECK_FALSE(check_proof(fake_refl, no_axioms).ok);

  ProofObject good_refl;
  good_refl.steps.emplace_back(Rule::Refl, std::vector<QuantitativeEquation>{},
                               eq(v("x"), v("x"), Rational(0)));
  CHECK(check_proof(good_refl, no_axioms).ok);

  QuantitativeEquation h = eq(v("x"), v("y"), Rational(1));
  ProofObject assume_then_flip;
  assume_then_flip.steps.emplace_back(Rule::Assumpt, std::vector<QuantitativeEquation>{h}, h);
  ProofStep flip(Rule::Symm, {h}, eq(v("y"), v("x"), Rational(1)));
  flip.premises.push_back({false, 0});
  assume_then_flip.steps.push_back(flip);
  CHECK(check_proof(assume_then_flip, no_axioms).ok);

  ProofObject dangling;
  dangling.steps.emplace_back(Rule::Assumpt, std::vector<QuantitativeEquation>{h}, h);
  ProofStep uses_later(Rule::Symm, {h}, eq(v("y"), v("x"), Rational(1)));
  uses_later.premises.push_back({false, 5});
  dangling.steps.push_back(uses_later);
  CHECK_FALSE(check_proof(dangling, no_axioms).ok);
}

TEST_CASE("strictly infinitary limit steps are rejected with a marked reason") {
  QuantitativeEquation h = eq(v("x"), v("y"), Rational(1));
  ProofObject p;
  p.steps.emplace_back(Rule::Assumpt, std::vector<QuantitativeEquation>{h}, h);
  ProofStep arch(Rule::Arch, {h}, eq(v("x"), v("y"), Rational(1, 2)));
  arch.premises.push_back({false, 0});
  p.steps.push_back(arch);
  ProofCheckResult r = check_proof(p, {});
  CHECK_FALSE(r.ok);
  CHECK(r.reason.find("infinitary") != std::string::npos);

  ProofStep fine(Rule::Arch, {h}, eq(v("x"), v("y"), Rational(2)));
  fine.premises.push_back({false, 0});
  ProofObject q;
  q.steps.emplace_back(Rule::Assumpt, std::vector<QuantitativeEquation>{h}, h);
  q.steps.push_back(fine);
  CHECK(check_proof(q, {}).ok);
}

TEST_CASE("inconsistency probe notices forced variable collapse") {
  Signature sig = fixtures::unary_sig();
  Budgets b;
  CHECK(is_consistent_probe(sig, {}, "x", "y", b));
  std::vector<ConditionalEquation> collapse = {
      ConditionalEquation({}, eq(v("x"), v("y"), Rational(0)))};
  CHECK_FALSE(is_consistent_probe(sig, collapse, "x", "y", b));
  Term fx = Term::apply("f", {v("x")});
  Term fy = Term::apply("f", {v("y")});
  std::vector<ConditionalEquation> harmless = {ConditionalEquation({}, eq(fx, fy, Rational(0)))};
  CHECK(is_consistent_probe(sig, harmless, "x", "y", b));
}
