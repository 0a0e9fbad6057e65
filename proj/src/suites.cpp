// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "qaw/algebra.hpp"
#include "qaw/constructions.hpp"
#include "qaw/derivation.hpp"
#include "qaw/equation.hpp"
#include "qaw/error.hpp"
#include "qaw/qfo.hpp"
#include "qaw/rng.hpp"
#include "qaw/term.hpp"

namespace qaw {

void SuiteResult::check(const std::string& label, bool ok, const std::string& detail) {
  lines.emplace_back(label, std::string(ok ? "ok" : "FAIL") + (detail.empty() ? "" : ": " + detail));
  if (!ok) pass = false;
}

void SuiteResult::note(const std::string& label, const std::string& value) {
  lines.emplace_back(label, value);
}

namespace {

// ---------------------------------------------------------------------------
// Shared generator kit. Every suite draws its raw material from the same
// small signatures so the exhaustive algebra families stay affordable.

struct SigSpec {
  std::string id;
  std::map<std::string, int> symbols;
  int carrier_limit;  // largest carrier whose family is enumerated in full
};

std::vector<SigSpec> signature_pool() {
  return {
      {"unary", {{"f", 1}}, 3},
      {"unary-const", {{"f", 1}, {"c", 0}}, 3},
      {"two-consts", {{"c", 0}, {"d", 0}}, 3},
      {"binary", {{"f", 2}}, 3},
      {"binary-const", {{"f", 2}, {"c", 0}}, 3},
  };
}

Signature make_sig(const SigSpec& spec) {
  return Signature(spec.symbols, {"x", "y", "z"});
}

std::vector<std::string> carrier_names(int n) {
  static const std::vector<std::string> kNames = {"a", "b", "c"};
  return std::vector<std::string>(kNames.begin(), kNames.begin() + n);
}

std::vector<ExtRational> distance_grid() {
  return {ExtRational(Rational(1, 2)), ExtRational(1), ExtRational(2), ExtRational::infinity()};
}

std::vector<Rational> bound_pool() {
  return {Rational(0), Rational(1, 2), Rational(1), Rational(2)};
}

// Exhaustive valid-algebra families, keyed by signature and carrier size and
// built once per suite run. Enumeration order is canonical, so the cached
// vectors are identical across runs.
class AlgebraPool {
 public:
  const std::vector<FiniteQuantitativeAlgebra>& family(const SigSpec& spec, int carrier,
                                                       const Budgets& budgets) {
    std::string key = spec.id + "#" + std::to_string(carrier);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Signature sig = make_sig(spec);
    std::vector<FiniteQuantitativeAlgebra> fam;
    enumerate_algebras(sig, carrier_names(carrier), distance_grid(), budgets,
                       [&fam](const FiniteQuantitativeAlgebra& a) {
                         fam.push_back(a);
                         return true;
                       });
    return cache_.emplace(key, std::move(fam)).first->second;
  }

  const FiniteQuantitativeAlgebra& pick(Rng& rng, const SigSpec& spec, int max_carrier,
                                        const Budgets& budgets) {
    int carrier = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_carrier)));
    const auto& fam = family(spec, carrier, budgets);
    return fam[rng.below(fam.size())];
  }

 private:
  std::map<std::string, std::vector<FiniteQuantitativeAlgebra>> cache_;
};

Term random_term(Rng& rng, const SigSpec& spec, const std::vector<std::string>& vars, int depth) {
  std::vector<std::string> consts;
  std::vector<std::pair<std::string, int>> proper;
  for (const auto& [sym, arity] : spec.symbols) {
    if (arity == 0) {
      consts.push_back(sym);
    } else {
      proper.emplace_back(sym, arity);
    }
  }
  bool leaf = depth <= 0 || proper.empty() || rng.coin();
  if (leaf) {
    std::size_t k = rng.below(vars.size() + consts.size());
    if (k < vars.size()) return Term::variable(vars[k]);
    return Term::apply(consts[k - vars.size()]);
  }
  const auto& [sym, arity] = proper[rng.below(proper.size())];
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) args.push_back(random_term(rng, spec, vars, depth - 1));
  return Term::apply(sym, args);
}

Rational random_bound(Rng& rng) {
  static const std::vector<Rational> pool = bound_pool();
  return pool[rng.below(pool.size())];
}

QuantitativeEquation random_equation(Rng& rng, const SigSpec& spec,
                                     const std::vector<std::string>& vars, int depth) {
  Term l = random_term(rng, spec, vars, depth);
  Term r = random_term(rng, spec, vars, depth);
  return QuantitativeEquation(l, r, random_bound(rng));
}

// Hypotheses between bare variables only.
ConditionalEquation random_basic_ce(Rng& rng, const SigSpec& spec,
                                    const std::vector<std::string>& vars, std::size_t max_hyps) {
  std::vector<QuantitativeEquation> hyps;
  std::size_t nh = rng.below(max_hyps + 1);
  for (std::size_t i = 0; i < nh; ++i) {
    Term l = Term::variable(vars[rng.below(vars.size())]);
    Term r = Term::variable(vars[rng.below(vars.size())]);
    hyps.emplace_back(l, r, random_bound(rng));
  }
  return ConditionalEquation(std::move(hyps), random_equation(rng, spec, vars, 2));
}

ConditionalEquation random_general_ce(Rng& rng, const SigSpec& spec,
                                      const std::vector<std::string>& vars, std::size_t max_hyps) {
  std::vector<QuantitativeEquation> hyps;
  std::size_t nh = rng.below(max_hyps + 1);
  for (std::size_t i = 0; i < nh; ++i) hyps.push_back(random_equation(rng, spec, vars, 1));
  return ConditionalEquation(std::move(hyps), random_equation(rng, spec, vars, 2));
}

// Coordinate projection of a binary product, surjective and c-reflexive for
// every c: a fiber over any target subset reproduces its distances exactly.
HomomorphismWitness projection_hom(const Signature& sig, const FiniteQuantitativeAlgebra& onto,
                                   const FiniteQuantitativeAlgebra& other,
                                   const Budgets& budgets) {
  HomomorphismWitness h;
  h.target = onto;
  h.source = direct_product(sig, {onto, other}, budgets);
  for (std::size_t i = 0; i < onto.size(); ++i) {
    for (std::size_t j = 0; j < other.size(); ++j) {
      h.map["(" + onto.carrier()[i] + ", " + other.carrier()[j] + ")"] = onto.carrier()[i];
    }
  }
  return h;
}

std::vector<std::string> random_subset(Rng& rng, const std::vector<std::string>& elems) {
  std::size_t size = 1 + rng.below(elems.size());
  std::set<std::string> out;
  while (out.size() < size) out.insert(elems[rng.below(elems.size())]);
  return std::vector<std::string>(out.begin(), out.end());
}

bool family_satisfies(const std::vector<FiniteQuantitativeAlgebra>& family,
                      const ConditionalEquation& ce) {
  for (const auto& a : family) {
    if (!satisfies(a, ce).holds) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Suite 1: soundness of the deduction rules against exhaustive families of
//(small) valid algebras. Universe terms are compiled once per instance so
// the inner evaluation loop touches nothing but integer tables.

SuiteResult suite_deduction_soundness(const Budgets& budgets) {
  SuiteResult out;
  out.name = "deduction-soundness";
  Rng rng(budgets.seed);
  AlgebraPool pool;
  const std::vector<SigSpec> specs = signature_pool();
  const std::vector<std::string> vars = {"x", "y"};
  const std::size_t instances = 200;
  long long algebras_checked = 0;
  long long satisfying_assignments = 0;
  long long bounds_checked = 0;
  long long violations = 0;
  std::string first_violation;

  for (std::size_t inst = 0; inst < instances; ++inst) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    std::vector<QuantitativeEquation> hyps;
    std::size_t nh = rng.below(3);
    for (std::size_t h = 0; h < nh; ++h) hyps.push_back(random_equation(rng, spec, vars, 2));
    QuantitativeEquation goal = random_equation(rng, spec, vars, 2);
    std::vector<Term> universe = build_universe(sig, hyps, goal, {}, budgets);
    SaturationResult sat = least_derivable_distance(sig, hyps, {}, universe, budgets);

    TermProgram program(universe, vars);
    struct Pair {
      std::size_t i, j;
      ExtRational bound;
    };
    std::vector<Pair> finite_pairs;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      for (std::size_t j = i + 1; j < universe.size(); ++j) {
        const ExtRational& e = sat.table.bound(static_cast<int>(i), static_cast<int>(j));
        if (!e.is_infinite()) finite_pairs.push_back({i, j, e});
      }
    }
    struct Hyp {
      std::size_t l, r;
      ExtRational bound;
    };
    std::vector<Hyp> hyp_idx;
    for (const auto& h : hyps) {
      hyp_idx.push_back({static_cast<std::size_t>(sat.table.index_of(h.left)),
                         static_cast<std::size_t>(sat.table.index_of(h.right)),
                         ExtRational(h.bound)});
    }

    for (int carrier = 1; carrier <= spec.carrier_limit; ++carrier) {
      const auto& fam = pool.family(spec, carrier, budgets);
      std::vector<int> vals;
      for (const auto& a : fam) {
        ++algebras_checked;
        const std::size_t n = a.size();
        program.bind(a.ops(), n);
        int assign[2];
        for (assign[0] = 0; assign[0] < static_cast<int>(n); ++assign[0]) {
          for (assign[1] = 0; assign[1] < static_cast<int>(n); ++assign[1]) {
            program.run(assign, vals);
            bool sat_hyps = true;
            for (const Hyp& h : hyp_idx) {
              if (a.distance(vals[program.root(h.l)], vals[program.root(h.r)]) > h.bound) {
                sat_hyps = false;
                break;
              }
            }
            if (!sat_hyps) continue;
            ++satisfying_assignments;
            for (const Pair& p : finite_pairs) {
              ++bounds_checked;
              if (a.distance(vals[program.root(p.i)], vals[program.root(p.j)]) > p.bound) {
                ++violations;
                if (first_violation.empty()) {
                  first_violation = "instance " + std::to_string(inst) + ", pair " +
                                    universe[p.i].str() + " / " + universe[p.j].str() +
                                    " exceeds " + p.bound.str();
                }
              }
            }
          }
        }
      }
    }
  }

  out.note("instances", std::to_string(instances));
  out.note("algebras-checked", std::to_string(algebras_checked));
  out.note("satisfying-assignments", std::to_string(satisfying_assignments));
  out.note("finite-bounds-checked", std::to_string(bounds_checked));
  out.check("soundness", violations == 0,
            violations == 0 ? "no derived bound exceeded" : first_violation);
  return out;
}

// ---------------------------------------------------------------------------
// Suite 2: the three worked derivations, pinned against countermodel search
// as an independent semantic oracle.

SuiteResult suite_tightness(const Budgets& budgets) {
  SuiteResult out;
  out.name = "tightness";
  Budgets b = budgets;
  b.max_carrier = 3;
  Signature sig({{"f", 1}}, {"x", "y", "z"});
  Term x = Term::variable("x");
  Term y = Term::variable("y");
  Term z = Term::variable("z");

  struct Example {
    std::string label;
    std::vector<QuantitativeEquation> hyps;
    Term left, right;
    Rational expected;
    bool probe_below;
    Rational below;
  };
  std::vector<Example> examples = {
      {"triangle",
       {QuantitativeEquation(x, y, Rational(1)), QuantitativeEquation(y, z, Rational(2))},
       x,
       z,
       Rational(3),
       true,
       Rational(5, 2)},
      {"nonexpansive",
       {QuantitativeEquation(x, y, Rational(1))},
       Term::apply("f", {x}),
       Term::apply("f", {y}),
       Rational(1),
       true,
       Rational(1, 2)},
      {"reflexivity", {}, x, x, Rational(0), false, Rational(0)},
  };

  for (const Example& ex : examples) {
    QuantitativeEquation goal(ex.left, ex.right, ex.expected);
    std::vector<Term> universe = build_universe(sig, ex.hyps, goal, {}, b);
    SaturationResult sat = least_derivable_distance(sig, ex.hyps, {}, universe, b);
    const ExtRational& least = sat.table.bound(ex.left, ex.right);
    out.check(ex.label + "-derived", least == ExtRational(ex.expected),
              "least derivable bound " + least.str() + ", expected " + ex.expected.str());
    auto at_bound = search_countermodel(sig, ex.hyps, goal, b.max_carrier, b);
    out.check(ex.label + "-sound", !at_bound.has_value(),
              "no countermodel at " + ex.expected.str());
    if (ex.probe_below) {
      QuantitativeEquation tighter(ex.left, ex.right, ex.below);
      auto below = search_countermodel(sig, ex.hyps, tighter, b.max_carrier, b);
      out.check(ex.label + "-tight", below.has_value(),
                "countermodel exists at " + ex.below.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite 3: the constructive witnesses behind the closure machinery: pullback
// restrictions, products of homomorphisms, and embedded subalgebra products.

SuiteResult suite_lemma_witnesses(const Budgets& budgets) {
  SuiteResult out;
  out.name = "lemma-2.8";
  Rng rng(budgets.seed);
  AlgebraPool pool;
  const std::vector<SigSpec> specs = signature_pool();
  const std::size_t instances = 100;

  long long pullback_failures = 0;
  std::string pullback_detail;
  for (std::size_t i = 0; i < instances; ++i) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    const auto& target = pool.pick(rng, spec, 2, budgets);
    const auto& other = pool.pick(rng, spec, 2, budgets);
    HomomorphismWitness f = projection_hom(sig, target, other, budgets);
    std::vector<std::string> seed = random_subset(rng, target.carrier());
    FiniteQuantitativeAlgebra sub = generated_subalgebra(target, seed);
    HomomorphismWitness g = pullback_restriction(f, sub);
    bool ok = is_homomorphism(g).ok && is_surjective(g);
    for (std::size_t c = 1; c <= 3 && ok; ++c) {
      if (is_c_reflexive(f, c) && !is_c_reflexive(g, c)) ok = false;
    }
    if (!ok) {
      ++pullback_failures;
      if (pullback_detail.empty()) pullback_detail = "instance " + std::to_string(i);
    }
  }
  out.note("pullback-instances", std::to_string(instances));
  out.check("pullback-preserves-reflexivity", pullback_failures == 0,
            pullback_failures == 0 ? "surjective and c-reflexive for c in {1,2,3}"
                                   : pullback_detail);

  long long product_failures = 0;
  std::string product_detail;
  for (std::size_t i = 0; i < instances; ++i) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    std::vector<HomomorphismWitness> factors;
    std::size_t count = 1 + rng.below(2);
    for (std::size_t k = 0; k < count; ++k) {
      const auto& target = pool.pick(rng, spec, 2, budgets);
      const auto& other = pool.pick(rng, spec, 2, budgets);
      factors.push_back(projection_hom(sig, target, other, budgets));
    }
    HomomorphismWitness big = product_of_homomorphisms(sig, factors, budgets);
    bool ok = is_homomorphism(big).ok && is_surjective(big);
    for (std::size_t c = 1; c <= 3 && ok; ++c) {
      bool all = true;
      for (const auto& f : factors) {
        if (!is_c_reflexive(f, c)) all = false;
      }
      if (all && !is_c_reflexive(big, c)) ok = false;
    }
    if (!ok) {
      ++product_failures;
      if (product_detail.empty()) product_detail = "instance " + std::to_string(i);
    }
  }
  out.note("product-instances", std::to_string(instances));
  out.check("product-preserves-reflexivity", product_failures == 0,
            product_failures == 0 ? "surjective and c-reflexive for c in {1,2,3}"
                                  : product_detail);

  long long embed_failures = 0;
  std::string embed_detail;
  for (std::size_t i = 0; i < instances; ++i) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    std::vector<FiniteQuantitativeAlgebra> parents;
    std::vector<FiniteQuantitativeAlgebra> subs;
    std::size_t count = 1 + rng.below(2);
    for (std::size_t k = 0; k < count; ++k) {
      parents.push_back(pool.pick(rng, spec, 2, budgets));
      subs.push_back(generated_subalgebra(parents.back(), random_subset(rng, parents.back().carrier())));
    }
    SubalgebraEmbedding emb = embed_product_of_subalgebras(sig, subs, parents, budgets);
    bool ok = is_subalgebra_of(emb.sub, emb.parent).ok &&
              emb.parent.same_as(direct_product(sig, parents, budgets));
    if (!ok) {
      ++embed_failures;
      if (embed_detail.empty()) embed_detail = "instance " + std::to_string(i);
    }
  }
  out.note("embedding-instances", std::to_string(instances));
  out.check("embedded-product-is-subalgebra", embed_failures == 0,
            embed_failures == 0 ? "validates inside the parent product" : embed_detail);
  return out;
}

// ---------------------------------------------------------------------------
// Suite 4: preservation of conditional equations under subalgebras, products,
// and c-reflexive homomorphic images (the latter for c-basic equations only).

SuiteResult suite_closure_lemmas(const Budgets& budgets) {
  SuiteResult out;
  out.name = "closure-lemmas";
  Rng rng(budgets.seed);
  AlgebraPool pool;
  const std::vector<SigSpec> specs = signature_pool();
  const std::vector<std::string> vars = {"x", "y"};
  const std::size_t target = 100;
  const std::size_t attempt_cap = 6000;

  std::size_t sub_hits = 0;
  long long sub_failures = 0;
  std::string sub_detail;
  for (std::size_t att = 0; att < attempt_cap && sub_hits < target; ++att) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    const auto& a = pool.pick(rng, spec, spec.carrier_limit, budgets);
    ConditionalEquation ce = random_general_ce(rng, spec, vars, 2);
    if (!satisfies(a, ce).holds) continue;
    ++sub_hits;
    FiniteQuantitativeAlgebra sub = generated_subalgebra(a, random_subset(rng, a.carrier()));
    if (!satisfies(sub, ce).holds) {
      ++sub_failures;
      if (sub_detail.empty()) sub_detail = ce.str();
    }
  }
  out.note("subalgebra-instances", std::to_string(sub_hits));
  out.check("subalgebras-preserve", sub_failures == 0,
            sub_failures == 0 ? "every satisfied equation survives" : sub_detail);

  std::size_t prod_hits = 0;
  long long prod_failures = 0;
  std::string prod_detail;
  for (std::size_t att = 0; att < attempt_cap && prod_hits < target; ++att) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    const auto& a1 = pool.pick(rng, spec, 2, budgets);
    const auto& a2 = pool.pick(rng, spec, 2, budgets);
    ConditionalEquation ce = random_general_ce(rng, spec, vars, 2);
    if (!satisfies(a1, ce).holds || !satisfies(a2, ce).holds) continue;
    ++prod_hits;
    FiniteQuantitativeAlgebra prod = direct_product(sig, {a1, a2}, budgets);
    if (!satisfies(prod, ce).holds) {
      ++prod_failures;
      if (prod_detail.empty()) prod_detail = ce.str();
    }
  }
  out.note("product-instances", std::to_string(prod_hits));
  out.check("products-preserve", prod_failures == 0,
            prod_failures == 0 ? "every jointly satisfied equation survives" : prod_detail);

  std::size_t img_hits = 0;
  long long img_failures = 0;
  long long img_excluded = 0;
  std::string img_detail;
  for (std::size_t att = 0; att < attempt_cap && img_hits < target; ++att) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    const auto& image = pool.pick(rng, spec, 2, budgets);
    const auto& other = pool.pick(rng, spec, 2, budgets);
    HomomorphismWitness f = projection_hom(sig, image, other, budgets);
    ConditionalEquation ce = random_basic_ce(rng, spec, vars, 2);
    if (!satisfies(f.source, ce).holds) continue;
    ++img_hits;
    for (std::size_t c = 1; c <= 3; ++c) {
      if (!is_c_basic(ce, c)) {
        ++img_excluded;  // image closure is only claimed below c hypotheses
        continue;
      }
      if (!is_c_reflexive(f, c)) continue;
      if (!satisfies(f.target, ce).holds) {
        ++img_failures;
        if (img_detail.empty()) img_detail = "c=" + std::to_string(c) + ", " + ce.str();
      }
    }
  }
  out.note("image-instances", std::to_string(img_hits));
  out.note("image-exclusions", std::to_string(img_excluded));
  out.check("reflexive-images-preserve", img_failures == 0,
            img_failures == 0 ? "c-basic equations survive c-reflexive images" : img_detail);
  return out;
}

// ---------------------------------------------------------------------------
// Suite 5: the canonical model is generic: it satisfies exactly the c-basic
// equations the family does, its embedded distances decide unconditional
// equations, and the weak universality projections behave.

FiniteQuantitativeAlgebra two_point(const Signature& sig, bool swap_f, const Rational& d) {
  std::map<std::string, OpTable> ops;
  ops["f"] = OpTable{1, swap_f ? std::vector<int>{1, 0} : std::vector<int>{0, 1}};
  std::vector<ExtRational> dist = {ExtRational(0), ExtRational(d), ExtRational(d), ExtRational(0)};
  return FiniteQuantitativeAlgebra(sig, {"a", "b"}, ops, dist);
}

SuiteResult suite_canonical_model(const Budgets& budgets) {
  SuiteResult out;
  out.name = "canonical-model";
  Signature sig({{"f", 1}}, {"x", "y"});
  std::map<std::string, OpTable> point_ops;
  point_ops["f"] = OpTable{1, {0}};
  FiniteQuantitativeAlgebra point(sig, {"a"}, point_ops, {ExtRational(0)});
  FiniteQuantitativeAlgebra ident = two_point(sig, false, Rational(1));
  FiniteQuantitativeAlgebra swap = two_point(sig, true, Rational(2));

  std::vector<std::pair<std::string, std::vector<FiniteQuantitativeAlgebra>>> configs = {
      {"point", {point}},
      {"identity", {ident}},
      {"swap", {swap}},
      {"identity+swap", {ident, swap}},
  };
  const std::vector<std::string> vars = {"x", "y"};
  const std::vector<Rational> bounds = bound_pool();

  long long equations_swept = 0;
  long long equivalence_failures = 0;
  long long distance_failures = 0;
  long long beta_failures = 0;
  long long depth_failures = 0;
  std::string detail;

  for (const auto& [label, family] : configs) {
    CanonicalModel model = canonical_model(sig, family, vars, 2, budgets);
    CanonicalModel deeper = canonical_model(sig, family, vars, 3, budgets);
    for (const Term& s : model.universe) {
      for (const Term& t : model.universe) {
        if (model.embedded_distance(s, t) != deeper.embedded_distance(s, t)) {
          ++depth_failures;
          if (detail.empty()) detail = label + ": " + s.str() + " vs " + t.str();
        }
      }
    }
    out.note("config-" + label,
             "assignments " + std::to_string(model.assignments.size()) + ", components " +
                 std::to_string(model.components.size()) + ", product carrier " +
                 std::to_string(model.product.size()));

    for (const auto& [member, assign] : model.assignments) {
      HomomorphismWitness beta = weak_universality_beta(model, family[member], assign);
      bool ok = is_homomorphism(beta).ok;
      for (const std::string& v : vars) {
        const std::string& image = beta.map.at(model.gamma.at(Term::variable(v)));
        if (image != assign.at(v)) ok = false;
      }
      if (!ok) {
        ++beta_failures;
        if (detail.empty()) detail = label + ": beta at " + assignment_str(assign);
      }
    }

    for (const Term& s : model.universe) {
      for (const Term& t : model.universe) {
        for (const Rational& eps : bounds) {
          ConditionalEquation plain({}, QuantitativeEquation(s, t, eps));
          bool in_family = family_satisfies(family, plain);
          bool by_distance = model.embedded_distance(s, t) <= ExtRational(eps);
          if (in_family != by_distance) {
            ++distance_failures;
            if (detail.empty()) detail = label + ": " + plain.conclusion.str();
          }
        }
      }
    }

    std::vector<std::vector<QuantitativeEquation>> hyp_sets;
    hyp_sets.push_back({});
    Term x = Term::variable("x");
    Term y = Term::variable("y");
    for (const Rational& b1 : bounds) hyp_sets.push_back({QuantitativeEquation(x, y, b1)});
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      for (std::size_t j = i + 1; j < bounds.size(); ++j) {
        hyp_sets.push_back({QuantitativeEquation(x, y, bounds[i]),
                            QuantitativeEquation(x, y, bounds[j])});
      }
    }
    for (const auto& hyps : hyp_sets) {
      for (const Term& s : model.universe) {
        for (const Term& t : model.universe) {
          for (const Rational& eps : bounds) {
            ConditionalEquation ce(std::vector<QuantitativeEquation>(hyps),
                                   QuantitativeEquation(s, t, eps));
            ++equations_swept;
            bool in_family = family_satisfies(family, ce);
            bool in_model = satisfies(model.product, ce).holds;
            if (in_family != in_model) {
              ++equivalence_failures;
              if (detail.empty()) detail = label + ": " + ce.str();
            }
          }
        }
      }
    }
  }

  out.note("equations-swept", std::to_string(equations_swept));
  out.check("generic-for-basic-equations", equivalence_failures == 0,
            equivalence_failures == 0 ? "family and model satisfaction agree" : detail);
  out.check("embedded-distances-decide", distance_failures == 0,
            distance_failures == 0 ? "unconditional satisfaction matches the distance table"
                                   : detail);
  out.check("weak-universality", beta_failures == 0,
            beta_failures == 0 ? "every projection is a homomorphism extending its assignment"
                               : detail);
  out.check("depth-invariance", depth_failures == 0,
            depth_failures == 0 ? "embedded distances are stable when the depth bound rises"
                                : detail);
  return out;
}

// ---------------------------------------------------------------------------
// Suite 6: the threshold-structure encoding is an isomorphism of presentations
// in both directions on exhaustive families.

SuiteResult suite_functor_iso(const Budgets& budgets) {
  SuiteResult out;
  out.name = "functor-iso";
  std::vector<ExtRational> grid = {ExtRational(Rational(1, 2)), ExtRational(1),
                                   ExtRational::infinity()};
  std::vector<SigSpec> specs = {
      {"unary", {{"f", 1}}, 3},
      {"binary", {{"f", 2}}, 3},
      {"two-consts", {{"c", 0}, {"d", 0}}, 3},
  };

  long long forward_count = 0;
  long long forward_failures = 0;
  std::string detail;
  for (const SigSpec& spec : specs) {
    Signature sig = make_sig(spec);
    for (int carrier = 1; carrier <= spec.carrier_limit; ++carrier) {
      enumerate_algebras(sig, carrier_names(carrier), grid, budgets,
                         [&](const FiniteQuantitativeAlgebra& a) {
                           ++forward_count;
                           ThresholdStructure m = to_qfo(a);
                           bool ok = check_qfo_axioms(m).all_pass() && to_algebra(m).same_as(a);
                           if (!ok) {
                             ++forward_failures;
                             if (detail.empty()) detail = spec.id + " carrier " +
                                                          std::to_string(carrier);
                           }
                           return true;
                         });
    }
  }
  out.note("algebras-roundtripped", std::to_string(forward_count));
  out.check("algebra-to-structure-roundtrip", forward_failures == 0,
            forward_failures == 0 ? "identity on every valid algebra" : detail);

  // Independent enumeration of all-closed structures: symmetric entry grids
  // times full operation tables, filtered by the structural axioms.
  std::vector<ThresholdEntry> entry_grid = {
      ThresholdEntry::at(Rational(1, 2), Flag::Closed), ThresholdEntry::at(Rational(1), Flag::Closed),
      ThresholdEntry::infinite()};
  long long reverse_count = 0;
  long long reverse_failures = 0;
  for (const SigSpec& spec : specs) {
    Signature sig = make_sig(spec);
    for (int carrier = 1; carrier <= spec.carrier_limit; ++carrier) {
      std::vector<std::string> names = carrier_names(carrier);
      std::size_t n = names.size();
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);
      }
      std::vector<std::size_t> entry_pick(cells.size(), 0);
      // Odometer over entry choices, then over every operation table.
      while (true) {
        std::vector<ThresholdEntry> entries(n * n, ThresholdEntry::at(Rational(0), Flag::Closed));
        for (std::size_t c = 0; c < cells.size(); ++c) {
          entries[cells[c].first * n + cells[c].second] = entry_grid[entry_pick[c]];
          entries[cells[c].second * n + cells[c].first] = entry_grid[entry_pick[c]];
        }
        // Odometer over operation tables.
        std::vector<std::pair<std::string, std::size_t>> op_slots;
        std::map<std::string, OpTable> ops;
        for (const auto& [sym, arity] : spec.symbols) {
          std::size_t total = 1;
          for (int k = 0; k < arity; ++k) total *= n;
          ops[sym] = OpTable{arity, std::vector<int>(total, 0)};
          for (std::size_t t = 0; t < total; ++t) op_slots.emplace_back(sym, t);
        }
        while (true) {
          ThresholdStructure m(sig, names, ops, entries);
          if (check_qfo_axioms(m).all_pass()) {
            ++reverse_count;
            if (!to_qfo(to_algebra(m)).same_as(m)) {
              ++reverse_failures;
              if (detail.empty()) detail = spec.id + " carrier " + std::to_string(carrier);
            }
          }
          std::size_t at = 0;
          for (; at < op_slots.size(); ++at) {
            auto& [sym, t] = op_slots[at];
            int& cell = ops[sym].table[t];
            if (static_cast<std::size_t>(cell) + 1 < n) {
              ++cell;
              break;
            }
            cell = 0;
          }
          if (at == op_slots.size()) break;
        }
        std::size_t at = 0;
        for (; at < cells.size(); ++at) {
          if (entry_pick[at] + 1 < entry_grid.size()) {
            ++entry_pick[at];
            break;
          }
          entry_pick[at] = 0;
        }
        if (at == cells.size()) break;
      }
    }
  }
  out.note("structures-roundtripped", std::to_string(reverse_count));
  out.check("structure-to-algebra-roundtrip", reverse_failures == 0,
            reverse_failures == 0 ? "identity on every all-closed structure" : detail);
  return out;
}

// ---------------------------------------------------------------------------
// Suite 7: reduced products over principal filters.

bool singleton_matches_factor(const ThresholdStructure& single, const ThresholdStructure& factor) {
  if (single.size() != factor.size()) return false;
  for (std::size_t i = 0; i < single.size(); ++i) {
    if (single.carrier()[i] != "(" + factor.carrier()[i] + ")") return false;
    for (std::size_t j = 0; j < single.size(); ++j) {
      if (single.entry(static_cast<int>(i), static_cast<int>(j)) !=
          factor.entry(static_cast<int>(i), static_cast<int>(j))) {
        return false;
      }
    }
  }
  if (single.ops().size() != factor.ops().size()) return false;
  for (const auto& [sym, op] : factor.ops()) {
    auto it = single.ops().find(sym);
    if (it == single.ops().end() || it->second.arity != op.arity ||
        it->second.table != op.table) {
      return false;
    }
  }
  return true;
}

SuiteResult suite_reduced_products(const Budgets& budgets) {
  SuiteResult out;
  out.name = "reduced-products";
  Rng rng(budgets.seed);
  AlgebraPool pool;
  const std::vector<SigSpec> specs = signature_pool();
  const std::size_t instances = 30;

  long long full_failures = 0;
  long long singleton_failures = 0;
  long long axiom6_failures = 0;
  std::string detail;
  for (std::size_t inst = 0; inst < instances; ++inst) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    std::size_t count = 1 + rng.below(3);
    std::vector<FiniteQuantitativeAlgebra> factors;
    std::vector<ThresholdStructure> ms;
    for (std::size_t k = 0; k < count; ++k) {
      factors.push_back(pool.pick(rng, spec, 2, budgets));
      ms.push_back(to_qfo(factors.back()));
    }
    FilterSpec full;
    full.index_count = count;
    for (std::size_t k = 0; k < count; ++k) full.generator.push_back(k);
    ThresholdStructure rp = reduced_product(ms, full, budgets);
    ThresholdStructure dp = to_qfo(direct_product(sig, factors, budgets));
    if (!rp.same_as(dp)) {
      ++full_failures;
      if (detail.empty()) detail = "instance " + std::to_string(inst) + " full filter";
    }
    if (!check_qfo_axioms(rp).all_pass()) ++axiom6_failures;
    for (std::size_t k = 0; k < count; ++k) {
      FilterSpec one;
      one.index_count = count;
      one.generator.push_back(k);
      ThresholdStructure rpk = reduced_product(ms, one, budgets);
      if (!singleton_matches_factor(rpk, ms[k])) {
        ++singleton_failures;
        if (detail.empty()) {
          detail = "instance " + std::to_string(inst) + " coordinate " + std::to_string(k);
        }
      }
      if (!check_qfo_axioms(rpk).all_pass()) ++axiom6_failures;
    }
  }
  out.note("instances", std::to_string(instances));
  out.check("full-filter-equals-product", full_failures == 0,
            full_failures == 0 ? "reduced product over the whole index set matches" : detail);
  out.check("singleton-filter-projects", singleton_failures == 0,
            singleton_failures == 0 ? "singleton filters reproduce their factor" : detail);
  out.check("closed-thresholds-everywhere", axiom6_failures == 0,
            axiom6_failures == 0 ? "every output keeps attained thresholds" : detail);

  // A two-point structure whose only ray is open satisfies everything except
  // the attainment axiom.
  Signature bare(std::map<std::string, int>{}, {"x"});
  std::vector<ThresholdEntry> entries = {
      ThresholdEntry::at(Rational(0), Flag::Closed), ThresholdEntry::at(Rational(1), Flag::Open),
      ThresholdEntry::at(Rational(1), Flag::Open), ThresholdEntry::at(Rational(0), Flag::Closed)};
  ThresholdStructure open_ray(bare, {"a", "b"}, {}, entries);
  std::vector<int> failing = check_qfo_axioms(open_ray).failing();
  out.check("open-ray-fails-exactly-attainment", failing == std::vector<int>{6},
            "failing axioms: " + [&failing] {
              std::string s;
              for (int f : failing) s += (s.empty() ? "" : ", ") + std::to_string(f);
              return s.empty() ? std::string("none") : s;
            }());
  return out;
}

// ---------------------------------------------------------------------------
// Suite 8: satisfaction transfers across the first-order translation.

SuiteResult suite_horn_transfer(const Budgets& budgets) {
  SuiteResult out;
  out.name = "horn-transfer";
  Rng rng(budgets.seed);
  AlgebraPool pool;
  const std::vector<SigSpec> specs = signature_pool();
  const std::vector<std::string> vars = {"x", "y"};
  const std::size_t instances = 200;
  long long mismatches = 0;
  std::string detail;
  for (std::size_t i = 0; i < instances; ++i) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    const auto& a = pool.pick(rng, spec, spec.carrier_limit, budgets);
    ConditionalEquation ce = rng.coin() ? random_general_ce(rng, spec, vars, 2)
                                        : random_basic_ce(rng, spec, vars, 2);
    bool direct = satisfies(a, ce).holds;
    bool translated = eval_horn(to_qfo(a), horn_of_conditional(ce)).holds;
    if (direct != translated) {
      ++mismatches;
      if (detail.empty()) detail = ce.str();
    }
  }
  out.note("pairs", std::to_string(instances));
  out.check("satisfaction-transfers", mismatches == 0,
            mismatches == 0 ? "algebraic and first-order verdicts agree" : detail);
  return out;
}

// ---------------------------------------------------------------------------
// Suite 9: classical congruence quotients embed as distance-1 quantitative
// quotients with the same equational theory at bound zero.

SuiteResult suite_birkhoff(const Budgets& budgets) {
  SuiteResult out;
  out.name = "birkhoff";
  Rng rng(budgets.seed);
  AlgebraPool pool;
  const std::vector<SigSpec> specs = signature_pool();
  const std::vector<std::string> vars = {"x", "y"};
  const std::size_t instances = 50;
  long long invalid_quotients = 0;
  long long mismatches = 0;
  long long equations_checked = 0;
  std::string detail;

  for (std::size_t inst = 0; inst < instances; ++inst) {
    const SigSpec& spec = specs[rng.below(specs.size())];
    Signature sig = make_sig(spec);
    const auto& a = pool.pick(rng, spec, spec.carrier_limit, budgets);
    const std::size_t n = a.size();

    // Random partition, then congruence closure: merging blocks whenever an
    // operation separates pointwise-related tuples.
    std::vector<std::size_t> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
      while (root[i] != root[root[i]]) root[i] = root[root[i]];
      return root[i];
    };
    for (std::size_t i = 0; i < n; ++i) root[find(i)] = find(rng.below(n));
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [sym, op] : a.ops()) {
        std::size_t total = op.table.size();
        for (std::size_t p = 0; p < total; ++p) {
          for (std::size_t q = 0; q < total; ++q) {
            std::size_t cp = p, cq = q;
            bool related = true;
            for (int k = 0; k < op.arity; ++k) {
              std::size_t ip = cp % n, iq = cq % n;
              cp /= n;
              cq /= n;
              if (find(ip) != find(iq)) related = false;
            }
            if (!related) continue;
            std::size_t rp = find(static_cast<std::size_t>(op.table[p]));
            std::size_t rq = find(static_cast<std::size_t>(op.table[q]));
            if (rp != rq) {
              root[rp] = rq;
              changed = true;
            }
          }
        }
      }
    }
    std::map<std::size_t, std::vector<std::string>> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks[find(i)].push_back(a.carrier()[i]);
    std::vector<std::vector<std::string>> classes;
    for (const auto& [r, members] : blocks) classes.push_back(members);
    std::sort(classes.begin(), classes.end());

    std::vector<ExtRational> p = congruence_to_pseudometric(a, classes);
    FiniteQuantitativeAlgebra q = quotient_algebra_by_pseudometric(a, p);
    if (!validate_algebra(q).ok) {
      ++invalid_quotients;
      if (detail.empty()) detail = "instance " + std::to_string(inst) + ": invalid quotient";
      continue;
    }

    std::vector<int> class_of(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < classes.size(); ++c) {
        for (const auto& e : classes[c]) {
          if (e == a.carrier()[i]) class_of[i] = static_cast<int>(c);
        }
      }
    }

    std::vector<Term> terms = enumerate_terms(sig, vars, 2, budgets.term_cap);
    TermProgram program(terms, vars);
    const std::size_t nt = terms.size();

    // Root values per assignment, quotient side then base side.
    const std::size_t m = q.size();
    std::vector<std::vector<int>> roots_q;
    program.bind(q.ops(), m);
    {
      std::vector<int> vals;
      int assign[2];
      for (assign[0] = 0; assign[0] < static_cast<int>(m); ++assign[0]) {
        for (assign[1] = 0; assign[1] < static_cast<int>(m); ++assign[1]) {
          program.run(assign, vals);
          std::vector<int> roots(nt);
          for (std::size_t ti = 0; ti < nt; ++ti) roots[ti] = vals[program.root(ti)];
          roots_q.push_back(std::move(roots));
        }
      }
    }
    std::vector<std::vector<int>> roots_a;
    program.bind(a.ops(), n);
    {
      std::vector<int> vals;
      int assign[2];
      for (assign[0] = 0; assign[0] < static_cast<int>(n); ++assign[0]) {
        for (assign[1] = 0; assign[1] < static_cast<int>(n); ++assign[1]) {
          program.run(assign, vals);
          std::vector<int> roots(nt);
          for (std::size_t ti = 0; ti < nt; ++ti) roots[ti] = vals[program.root(ti)];
          roots_a.push_back(std::move(roots));
        }
      }
    }
    std::vector<char> zero_q(m * m);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) {
        zero_q[u * m + v] = q.distance(static_cast<int>(u), static_cast<int>(v)) == ExtRational(0);
      }
    }

    for (std::size_t si = 0; si < nt; ++si) {
      for (std::size_t ti = 0; ti < nt; ++ti) {
        ++equations_checked;
        bool quotient_says = true;
        for (const auto& roots : roots_q) {
          if (!zero_q[static_cast<std::size_t>(roots[si]) * m +
                      static_cast<std::size_t>(roots[ti])]) {
            quotient_says = false;
            break;
          }
        }
        bool classical = true;
        for (const auto& roots : roots_a) {
          if (class_of[static_cast<std::size_t>(roots[si])] !=
              class_of[static_cast<std::size_t>(roots[ti])]) {
            classical = false;
            break;
          }
        }
        if (quotient_says != classical) {
          ++mismatches;
          if (detail.empty()) {
            detail = "instance " + std::to_string(inst) + ": " + terms[si].str() + " vs " +
                     terms[ti].str();
          }
        }
      }
    }
  }
  out.note("congruences", std::to_string(instances));
  out.note("equations-checked", std::to_string(equations_checked));
  out.check("quotients-validate", invalid_quotients == 0,
            invalid_quotients == 0 ? "every quotient is a valid quantitative algebra" : detail);
  out.check("zero-distance-theory-matches", mismatches == 0,
            mismatches == 0 ? "bound-zero equations coincide with the classical quotient"
                            : detail);
  return out;
}

// ---------------------------------------------------------------------------
// Suite 10: byte-identical reruns.

std::string render_suite(const SuiteResult& r) {
  std::ostringstream os;
  os << r.name << "\n";
  for (const auto& [k, v] : r.lines) os << k << " = " << v << "\n";
  os << (r.pass ? "pass" : "fail") << "\n";
  return os.str();
}

SuiteResult suite_determinism(const Budgets& budgets) {
  SuiteResult out;
  out.name = "determinism";
  const std::vector<std::string> names = {
      "deduction-soundness", "tightness",        "lemma-2.8",    "closure-lemmas",
      "canonical-model",     "functor-iso",      "reduced-products", "horn-transfer",
      "birkhoff"};
  for (const std::string& name : names) {
    std::string first = render_suite(run_suite(name, budgets));
    std::string second = render_suite(run_suite(name, budgets));
    out.check(name, first == second, first == second ? "byte-identical rerun" : "reports differ");
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"deduction-soundness", "tightness",        "lemma-2.8",     "closure-lemmas",
          "canonical-model",     "functor-iso",      "reduced-products", "horn-transfer",
          "birkhoff",            "determinism"};
}

SuiteResult run_suite(const std::string& name, const Budgets& budgets) {
  if (name == "deduction-soundness") return suite_deduction_soundness(budgets);
  if (name == "tightness") return suite_tightness(budgets);
  if (name == "lemma-2.8") return suite_lemma_witnesses(budgets);
  if (name == "closure-lemmas") return suite_closure_lemmas(budgets);
  if (name == "canonical-model") return suite_canonical_model(budgets);
  if (name == "functor-iso") return suite_functor_iso(budgets);
  if (name == "reduced-products") return suite_reduced_products(budgets);
  if (name == "horn-transfer") return suite_horn_transfer(budgets);
  if (name == "birkhoff") return suite_birkhoff(budgets);
  if (name == "determinism") return suite_determinism(budgets);
  std::string all;
  for (const std::string& n : suite_names()) all += (all.empty() ? "" : ", ") + n;
  throw ValidationError("unknown suite '" + name + "'; available: " + all);
}

}  // namespace qaw
