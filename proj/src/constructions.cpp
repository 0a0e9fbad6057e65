// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/constructions.hpp"

#include <algorithm>
#include <set>

#include "qaw/error.hpp"

namespace qaw {

namespace {

std::string tuple_name(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += ")";
  return out;
}

void require_sorted_universe(const std::vector<Term>& universe) {
  for (std::size_t i = 1; i < universe.size(); ++i) {
    if (!(universe[i - 1] < universe[i])) {
      throw ValidationError("term universe must be sorted and duplicate-free");
    }
  }
}

// Calls fn with every tuple of indices drawn from [0, n), lowest slot varying
// fastest, until fn returns false. Emits the empty tuple once when k == 0.
bool for_each_tuple(std::size_t k, std::size_t n,
                    const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k, 0);
  if (k > 0 && n == 0) return true;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t slot = k;
    while (slot > 0) {
      --slot;
      if (idx[slot] + 1 < static_cast<int>(n)) {
        ++idx[slot];
        break;
      }
      idx[slot] = 0;
      if (slot == 0) return true;
    }
    if (k == 0) return true;
  }
}

}  // namespace

int PseudometricTable::index_of(const Term& t) const {
  auto it = std::lower_bound(universe.begin(), universe.end(), t);
  if (it == universe.end() || *it != t) return -1;
  return static_cast<int>(it - universe.begin());
}

const ExtRational& PseudometricTable::at(int i, int j) const {
  return values[static_cast<std::size_t>(i) * universe.size() + static_cast<std::size_t>(j)];
}

const ExtRational& PseudometricTable::at(const Term& s, const Term& t) const {
  int i = index_of(s);
  int j = index_of(t);
  if (i < 0) throw ValidationError("term " + s.str() + " is not in the universe");
  if (j < 0) throw ValidationError("term " + t.str() + " is not in the universe");
  return at(i, j);
}

bool PseudometricTable::same_as(const PseudometricTable& o) const {
  if (universe.size() != o.universe.size()) return false;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (universe[i] != o.universe[i]) return false;
  }
  return values == o.values;
}

Verdict validate_pseudometric(const Signature& sig, const PseudometricTable& p) {
  Verdict v;
  require_sorted_universe(p.universe);
  std::size_t n = p.universe.size();
  if (p.values.size() != n * n) {
    v.fail("value table has wrong shape");
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.at(static_cast<int>(i), static_cast<int>(i)).is_zero()) {
      v.fail("nonzero self-distance at " + p.universe[i].str());
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.at(static_cast<int>(i), static_cast<int>(j)) !=
          p.at(static_cast<int>(j), static_cast<int>(i))) {
        v.fail("asymmetry between " + p.universe[i].str() + " and " + p.universe[j].str());
      }
      if (!p.at(static_cast<int>(i), static_cast<int>(j)).is_infinite() &&
          p.at(static_cast<int>(i), static_cast<int>(j)).finite().is_negative()) {
        v.fail("negative distance between " + p.universe[i].str() + " and " +
               p.universe[j].str());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (p.at(static_cast<int>(i), static_cast<int>(j)) >
            p.at(static_cast<int>(i), static_cast<int>(k)) +
                p.at(static_cast<int>(k), static_cast<int>(j))) {
          v.fail("triangle violation at " + p.universe[i].str() + ", " + p.universe[k].str() +
                 ", " + p.universe[j].str());
          if (v.issues.size() > 24) return v;
        }
      }
    }
  }
  // Non-expansiveness restricted to same-head applications whose arguments
  // all lie in the universe.
  for (std::size_t i = 0; i < n; ++i) {
    const Term& s = p.universe[i];
    if (!s.is_application() || s.args().empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const Term& t = p.universe[j];
      if (!t.is_application() || t.head() != s.head()) continue;
      ExtRational bound(0);
      bool all_present = true;
      for (std::size_t a = 0; a < s.args().size(); ++a) {
        int ia = p.index_of(s.args()[a]);
        int ja = p.index_of(t.args()[a]);
        if (ia < 0 || ja < 0) {
          all_present = false;
          break;
        }
        bound = max(bound, p.at(ia, ja));
      }
      if (all_present && p.at(static_cast<int>(i), static_cast<int>(j)) > bound) {
        v.fail("operation " + s.head() + " is expansive between " + s.str() + " and " + t.str());
        if (v.issues.size() > 24) return v;
      }
    }
  }
  (void)sig;
  return v;
}

FiniteQuantitativeAlgebra direct_product(const Signature& sig,
                                         const std::vector<FiniteQuantitativeAlgebra>& factors,
                                         const Budgets& budgets) {
  for (const auto& f : factors) {
    if (f.signature().symbols() != sig.symbols()) {
      throw ValidationError("product factor interprets a different signature");
    }
  }
  std::size_t total = 1;
  std::vector<std::size_t> sizes;
  sizes.reserve(factors.size());
  for (const auto& f : factors) {
    sizes.push_back(f.size());
    if (f.size() == 0) {
      total = 0;
    } else if (total > budgets.carrier_cap / f.size()) {
      throw BudgetError("product carrier exceeds the carrier cap");
    } else {
      total *= f.size();
    }
  }
  if (total > budgets.carrier_cap) throw BudgetError("product carrier exceeds the carrier cap");

  // Place value of factor i: product of the sizes after it, so that the first
  // factor is the most significant digit of an element index.
  std::vector<std::size_t> place(factors.size(), 1);
  for (std::size_t i = factors.size(); i-- > 1;) place[i - 1] = place[i] * sizes[i];

  auto coord = [&](std::size_t e, std::size_t i) {
    return static_cast<int>((e / place[i]) % sizes[i]);
  };

  std::vector<std::string> carrier;
  carrier.reserve(total);
  for (std::size_t e = 0; e < total; ++e) {
    std::vector<std::string> parts;
    parts.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) parts.push_back(factors[i].element(coord(e, i)));
    carrier.push_back(tuple_name(parts));
  }

  std::uint64_t work = 0;
  std::map<std::string, OpTable> ops;
  for (const auto& [name, arity] : sig.symbols()) {
    if (total == 0) {
      ops[name] = OpTable{arity, {}};
      continue;
    }
    std::uint64_t cells = 1;
    for (int a = 0; a < arity; ++a) {
      if (cells > budgets.step_cap / total) {
        throw BudgetError("product operation tables exceed the step budget");
      }
      cells *= total;
    }
    work += cells;
    if (work > budgets.step_cap) {
      throw BudgetError("product operation tables exceed the step budget");
    }
    OpTable t;
    t.arity = arity;
    t.table.reserve(cells);
    for_each_tuple(static_cast<std::size_t>(arity), total, [&](const std::vector<int>& args) {
      std::size_t result = 0;
      std::vector<int> sub(args.size());
      for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t a = 0; a < args.size(); ++a) {
          sub[a] = coord(static_cast<std::size_t>(args[a]), i);
        }
        result += static_cast<std::size_t>(factors[i].op_apply(name, sub)) * place[i];
      }
      t.table.push_back(static_cast<int>(result));
      return true;
    });
    ops[name] = std::move(t);
  }

  std::vector<ExtRational> dist(total * total, ExtRational(0));
  for (std::size_t e = 0; e < total; ++e) {
    for (std::size_t g = 0; g < total; ++g) {
      ExtRational d(0);
      for (std::size_t i = 0; i < factors.size(); ++i) {
        d = max(d, factors[i].distance(coord(e, i), coord(g, i)));
      }
      dist[e * total + g] = d;
    }
  }
  return FiniteQuantitativeAlgebra(sig, std::move(carrier), std::move(ops), std::move(dist));
}

FiniteQuantitativeAlgebra generated_subalgebra(const FiniteQuantitativeAlgebra& a,
                                               const std::vector<std::string>& seed) {
  std::set<int> closure;
  for (const auto& name : seed) closure.insert(a.require_index(name));
  for (const auto& [name, op] : a.ops()) {
    if (op.arity == 0 && a.size() > 0) closure.insert(a.op_apply(name, {}));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> current(closure.begin(), closure.end());
    for (const auto& [name, op] : a.ops()) {
      if (op.arity == 0) continue;
      for_each_tuple(static_cast<std::size_t>(op.arity), current.size(),
                     [&](const std::vector<int>& pick) {
                       std::vector<int> args(pick.size());
                       for (std::size_t i = 0; i < pick.size(); ++i) args[i] = current[pick[i]];
                       int r = a.op_apply(name, args);
                       if (closure.insert(r).second) grew = true;
                       return true;
                     });
    }
  }
  std::vector<std::string> names;
  names.reserve(closure.size());
  for (int i : closure) names.push_back(a.element(i));
  return induced_subalgebra(a, names);
}

PseudometricTable pseudometric_from_assignment(const FiniteQuantitativeAlgebra& a,
                                               const Assignment& assign,
                                               const std::vector<Term>& universe) {
  require_sorted_universe(universe);
  PseudometricTable p;
  p.universe = universe;
  std::size_t n = universe.size();
  std::vector<int> where(n);
  for (std::size_t i = 0; i < n; ++i) where[i] = evaluate_index(a, assign, universe[i]);
  p.values.assign(n * n, ExtRational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      p.values[i * n + j] = a.distance(where[i], where[j]);
    }
  }
  return p;
}

FiniteQuantitativeAlgebra quotient_by_pseudometric(const Signature& sig,
                                                   const PseudometricTable& p) {
  Verdict well = validate_pseudometric(sig, p);
  if (!well) throw ValidationError("not a pseudometric: " + well.issues.front());

  std::size_t n = p.universe.size();
  std::vector<int> class_of(n, -1);
  std::vector<int> reps;  // universe index of each class's least member
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (p.at(static_cast<int>(i), reps[c]).is_zero()) {
        class_of[i] = static_cast<int>(c);
        break;
      }
    }
    if (class_of[i] < 0) {
      class_of[i] = static_cast<int>(reps.size());
      reps.push_back(static_cast<int>(i));
    }
  }

  std::size_t k = reps.size();
  std::vector<std::string> carrier;
  carrier.reserve(k);
  for (int r : reps) carrier.push_back("[" + p.universe[static_cast<std::size_t>(r)].str() + "]");

  // Members of each class, for the representative-choice search below.
  std::vector<std::vector<int>> members(k);
  for (std::size_t i = 0; i < n; ++i) {
    members[static_cast<std::size_t>(class_of[i])].push_back(static_cast<int>(i));
  }

  std::map<std::string, OpTable> ops;
  for (const auto& [name, arity] : sig.symbols()) {
    OpTable t;
    t.arity = arity;
    for_each_tuple(static_cast<std::size_t>(arity), k, [&](const std::vector<int>& classes) {
      // Search for a choice of class members whose application term lies in
      // the universe; any two such choices are kernel-equivalent.
      int found = -1;
      std::vector<std::size_t> pick(classes.size(), 0);
      while (found < 0) {
        std::vector<Term> args;
        args.reserve(classes.size());
        for (std::size_t i = 0; i < classes.size(); ++i) {
          int u = members[static_cast<std::size_t>(classes[i])][pick[i]];
          args.push_back(p.universe[static_cast<std::size_t>(u)]);
        }
        int idx = p.index_of(Term::apply(name, args));
        if (idx >= 0) {
          found = class_of[static_cast<std::size_t>(idx)];
          break;
        }
        std::size_t slot = classes.size();
        bool advanced = false;
        while (slot > 0) {
          --slot;
          if (pick[slot] + 1 < members[static_cast<std::size_t>(classes[slot])].size()) {
            ++pick[slot];
            advanced = true;
            break;
          }
          pick[slot] = 0;
        }
        if (!advanced) break;
      }
      if (found < 0) {
        std::string call = name;
        if (!classes.empty()) {
          call += "(";
          for (std::size_t i = 0; i < classes.size(); ++i) {
            if (i) call += ", ";
            call += carrier[static_cast<std::size_t>(classes[i])];
          }
          call += ")";
        }
        throw ValidationError("universe is not closed under operations: no member of " + call +
                              " lies in the universe");
      }
      t.table.push_back(found);
      return true;
    });
    ops[name] = std::move(t);
  }

  std::vector<ExtRational> dist(k * k, ExtRational(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      dist[i * k + j] = p.at(reps[i], reps[j]);
    }
  }
  return FiniteQuantitativeAlgebra(sig, std::move(carrier), std::move(ops), std::move(dist));
}

FiniteQuantitativeAlgebra quotient_algebra_by_pseudometric(const FiniteQuantitativeAlgebra& a,
                                                           const std::vector<ExtRational>& p) {
  std::size_t n = a.size();
  if (p.size() != n * n) throw ValidationError("pseudometric table has wrong shape");
  auto at = [&](int i, int j) -> const ExtRational& {
    return p[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!at(static_cast<int>(i), static_cast<int>(i)).is_zero()) {
      throw ValidationError("pseudometric has a nonzero self-distance at " +
                            a.element(static_cast<int>(i)));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (at(static_cast<int>(i), static_cast<int>(j)) !=
          at(static_cast<int>(j), static_cast<int>(i))) {
        throw ValidationError("pseudometric is asymmetric");
      }
      if (!at(static_cast<int>(i), static_cast<int>(j)).is_infinite() &&
          at(static_cast<int>(i), static_cast<int>(j)).finite().is_negative()) {
        throw ValidationError("pseudometric has a negative entry");
      }
      for (std::size_t m = 0; m < n; ++m) {
        if (at(static_cast<int>(i), static_cast<int>(j)) >
            at(static_cast<int>(i), static_cast<int>(m)) +
                at(static_cast<int>(m), static_cast<int>(j))) {
          throw ValidationError("pseudometric violates the triangle inequality");
        }
      }
    }
  }
  for (const auto& [name, op] : a.ops()) {
    std::size_t arity = static_cast<std::size_t>(op.arity);
    for_each_tuple(arity, n, [&](const std::vector<int>& xs) {
      for_each_tuple(arity, n, [&](const std::vector<int>& ys) {
        ExtRational bound(0);
        for (std::size_t i = 0; i < arity; ++i) bound = max(bound, at(xs[i], ys[i]));
        const ExtRational& got = at(a.op_apply(name, xs), a.op_apply(name, ys));
        if (got > bound) {
          if (bound.is_zero()) {
            throw ValidationError("kernel of the pseudometric is not a congruence of " + name);
          }
          throw ValidationError("pseudometric is expansive under " + name);
        }
        return true;
      });
      return true;
    });
  }

  std::vector<int> class_of(n, -1);
  std::vector<int> reps;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (at(static_cast<int>(i), reps[c]).is_zero()) {
        class_of[i] = static_cast<int>(c);
        break;
      }
    }
    if (class_of[i] < 0) {
      class_of[i] = static_cast<int>(reps.size());
      reps.push_back(static_cast<int>(i));
    }
  }
  std::size_t k = reps.size();
  std::vector<std::string> carrier;
  carrier.reserve(k);
  for (int r : reps) carrier.push_back("[" + a.element(r) + "]");

  std::map<std::string, OpTable> ops;
  for (const auto& [name, op] : a.ops()) {
    OpTable t;
    t.arity = op.arity;
    for_each_tuple(static_cast<std::size_t>(op.arity), k, [&](const std::vector<int>& classes) {
      std::vector<int> args(classes.size());
      for (std::size_t i = 0; i < classes.size(); ++i) {
        args[i] = reps[static_cast<std::size_t>(classes[i])];
      }
      t.table.push_back(class_of[static_cast<std::size_t>(a.op_apply(name, args))]);
      return true;
    });
    ops[name] = std::move(t);
  }

  std::vector<ExtRational> dist(k * k, ExtRational(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) dist[i * k + j] = at(reps[i], reps[j]);
  }
  return FiniteQuantitativeAlgebra(a.signature(), std::move(carrier), std::move(ops),
                                   std::move(dist));
}

Verdict is_subalgebra_of(const FiniteQuantitativeAlgebra& sub,
                         const FiniteQuantitativeAlgebra& parent) {
  Verdict v;
  if (sub.signature().symbols() != parent.signature().symbols()) {
    v.fail("signatures differ");
    return v;
  }
  std::vector<int> up(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    int j = parent.index_of(sub.element(static_cast<int>(i)));
    if (j < 0) {
      v.fail("element " + sub.element(static_cast<int>(i)) + " is not in the parent carrier");
      return v;
    }
    up[i] = j;
  }
  for (std::size_t i = 0; i < sub.size(); ++i) {
    for (std::size_t j = 0; j < sub.size(); ++j) {
      if (sub.distance(static_cast<int>(i), static_cast<int>(j)) !=
          parent.distance(up[i], up[j])) {
        v.fail("distance between " + sub.element(static_cast<int>(i)) + " and " +
               sub.element(static_cast<int>(j)) + " differs from the parent");
      }
    }
  }
  for (const auto& [name, op] : sub.ops()) {
    for_each_tuple(static_cast<std::size_t>(op.arity), sub.size(),
                   [&](const std::vector<int>& args) {
                     std::vector<int> pargs(args.size());
                     for (std::size_t i = 0; i < args.size(); ++i) {
                       pargs[i] = up[static_cast<std::size_t>(args[i])];
                     }
                     int got = up[static_cast<std::size_t>(sub.op_apply(name, args))];
                     if (got != parent.op_apply(name, pargs)) {
                       v.fail("operation " + name + " disagrees with the parent");
                       return false;
                     }
                     return true;
                   });
  }
  return v;
}

std::size_t r_of_K(const std::vector<FiniteQuantitativeAlgebra>& family) {
  std::size_t largest = 0;
  for (const auto& a : family) largest = std::max(largest, a.size());
  return largest + 1;
}

const ExtRational& CanonicalModel::embedded_distance(const Term& s, const Term& t) const {
  auto is_ = gamma.find(s);
  auto it_ = gamma.find(t);
  if (is_ == gamma.end()) throw ValidationError("term " + s.str() + " is not in the universe");
  if (it_ == gamma.end()) throw ValidationError("term " + t.str() + " is not in the universe");
  return product.distance(is_->second, it_->second);
}

CanonicalModel canonical_model(const Signature& sig,
                               const std::vector<FiniteQuantitativeAlgebra>& family,
                               const std::vector<std::string>& vars, int depth,
                               const Budgets& budgets) {
  if (family.empty()) throw ValidationError("canonical model needs a nonempty family");
  CanonicalModel model;
  model.sig = sig;
  model.vars = vars;
  model.members = family;
  for (const auto& a : family) {
    if (a.signature().symbols() != sig.symbols()) {
      throw ValidationError("family member interprets a different signature");
    }
  }
  for (const auto& v : vars) {
    if (!sig.has_variable(v)) throw ValidationError("undeclared variable " + v);
  }
  model.universe = enumerate_terms(sig, vars, depth, budgets.term_cap);

  std::size_t cell = std::max<std::size_t>(model.universe.size() * model.universe.size(), 1);
  std::uint64_t spent = 0;
  for (std::size_t mi = 0; mi < family.size(); ++mi) {
    const auto& a = family[mi];
    std::size_t count = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (a.size() == 0) {
        count = 0;
        break;
      }
      if (count > budgets.step_cap / a.size()) {
        throw BudgetError("canonical model assignment sweep exceeds the step budget");
      }
      count *= a.size();
    }
    spent += static_cast<std::uint64_t>(count) * cell;
    if (spent > budgets.step_cap) {
      throw BudgetError("canonical model assignment sweep exceeds the step budget");
    }
    for_each_tuple(vars.size(), a.size(), [&](const std::vector<int>& idx) {
      Assignment assign;
      for (std::size_t i = 0; i < vars.size(); ++i) assign[vars[i]] = a.element(idx[i]);
      model.assignments.emplace_back(mi, assign);
      PseudometricTable table = pseudometric_from_assignment(a, assign, model.universe);
      bool fresh = true;
      for (const auto& comp : model.components) {
        if (comp.table.same_as(table)) {
          fresh = false;
          break;
        }
      }
      if (fresh) {
        CanonicalComponent comp;
        comp.member_index = mi;
        comp.assignment = assign;
        comp.table = std::move(table);
        std::set<std::string> seed;
        for (const auto& [var, val] : assign) seed.insert(val);
        comp.algebra = generated_subalgebra(a, {seed.begin(), seed.end()});
        model.components.push_back(std::move(comp));
      }
      return true;
    });
  }

  std::vector<FiniteQuantitativeAlgebra> factor_algebras;
  factor_algebras.reserve(model.components.size());
  for (const auto& comp : model.components) factor_algebras.push_back(comp.algebra);
  model.product = direct_product(sig, factor_algebras, budgets);

  for (const auto& t : model.universe) {
    std::vector<std::string> parts;
    parts.reserve(model.components.size());
    for (const auto& comp : model.components) {
      parts.push_back(evaluate(family[comp.member_index], comp.assignment, t));
    }
    model.gamma[t] = tuple_name(parts);
  }
  return model;
}

HomomorphismWitness weak_universality_beta(const CanonicalModel& model,
                                           const FiniteQuantitativeAlgebra& target,
                                           const Assignment& assign) {
  if (target.signature().symbols() != model.sig.symbols()) {
    throw ValidationError("target interprets a different signature");
  }
  PseudometricTable table = pseudometric_from_assignment(target, assign, model.universe);
  std::size_t star = model.components.size();
  for (std::size_t j = 0; j < model.components.size(); ++j) {
    if (model.components[j].table.same_as(table)) {
      star = j;
      break;
    }
  }
  if (star == model.components.size()) {
    throw ValidationError("no canonical component induces the same distances as the assignment");
  }
  const FiniteQuantitativeAlgebra& comp = model.components[star].algebra;
  const Assignment& comp_assign = model.components[star].assignment;

  // Pair up the generators, then close under the operations in parallel.
  // A clash means the universe depth was too small to pin the map down.
  std::map<int, int> pairing;  // component index -> target index
  auto link = [&](int c, int t) {
    auto it = pairing.find(c);
    if (it != pairing.end()) {
      if (it->second != t) {
        throw ValidationError(
            "universe depth too small: component element " + comp.element(c) +
            " would have to map to both " + target.element(it->second) + " and " +
            target.element(t));
      }
      return false;
    }
    pairing[c] = t;
    return true;
  };
  for (const auto& v : model.vars) {
    link(comp.require_index(comp_assign.at(v)), target.require_index(assign.at(v)));
  }
  for (const auto& [name, op] : comp.ops()) {
    if (op.arity == 0 && comp.size() > 0) {
      link(comp.op_apply(name, {}), target.op_apply(name, {}));
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int, int>> known(pairing.begin(), pairing.end());
    for (const auto& [name, op] : comp.ops()) {
      if (op.arity == 0) continue;
      for_each_tuple(static_cast<std::size_t>(op.arity), known.size(),
                     [&](const std::vector<int>& pick) {
                       std::vector<int> cargs(pick.size()), targs(pick.size());
                       for (std::size_t i = 0; i < pick.size(); ++i) {
                         cargs[i] = known[static_cast<std::size_t>(pick[i])].first;
                         targs[i] = known[static_cast<std::size_t>(pick[i])].second;
                       }
                       if (link(comp.op_apply(name, cargs), target.op_apply(name, targs))) {
                         grew = true;
                       }
                       return true;
                     });
    }
  }
  if (pairing.size() != comp.size()) {
    throw ValidationError("component is not generated by the assignment values");
  }

  std::vector<std::size_t> place(model.components.size(), 1);
  for (std::size_t i = model.components.size(); i-- > 1;) {
    place[i - 1] = place[i] * model.components[i].algebra.size();
  }
  HomomorphismWitness beta{model.product, target, {}};
  for (std::size_t e = 0; e < model.product.size(); ++e) {
    int c = static_cast<int>((e / place[star]) % comp.size());
    beta.map[model.product.element(static_cast<int>(e))] = target.element(pairing.at(c));
  }
  Verdict v = is_homomorphism(beta);
  if (!v) {
    throw ValidationError("universe depth too small: projection is not a homomorphism (" +
                          v.issues.front() + ")");
  }
  return beta;
}

HomomorphismWitness pullback_restriction(const HomomorphismWitness& f,
                                         const FiniteQuantitativeAlgebra& sub_of_target) {
  Verdict sub_ok = is_subalgebra_of(sub_of_target, f.target);
  if (!sub_ok) {
    throw ValidationError("restriction target is not a subalgebra: " + sub_ok.issues.front());
  }
  std::vector<std::string> preimage;
  std::map<std::string, std::string> restricted;
  for (const auto& name : f.source.carrier()) {
    const std::string& image = f.map.at(name);
    if (sub_of_target.index_of(image) >= 0) {
      preimage.push_back(name);
      restricted[name] = image;
    }
  }
  return HomomorphismWitness{induced_subalgebra(f.source, preimage), sub_of_target,
                             std::move(restricted)};
}

HomomorphismWitness product_of_homomorphisms(const Signature& sig,
                                             const std::vector<HomomorphismWitness>& factors,
                                             const Budgets& budgets) {
  std::vector<FiniteQuantitativeAlgebra> sources, targets;
  sources.reserve(factors.size());
  targets.reserve(factors.size());
  for (const auto& f : factors) {
    sources.push_back(f.source);
    targets.push_back(f.target);
  }
  HomomorphismWitness h{direct_product(sig, sources, budgets),
                        direct_product(sig, targets, budgets),
                        {}};
  std::vector<std::size_t> sizes, place(factors.size(), 1);
  for (const auto& f : factors) sizes.push_back(f.source.size());
  for (std::size_t i = factors.size(); i-- > 1;) place[i - 1] = place[i] * sizes[i];
  for (std::size_t e = 0; e < h.source.size(); ++e) {
    std::vector<std::string> parts;
    parts.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      int c = static_cast<int>((e / place[i]) % sizes[i]);
      parts.push_back(factors[i].map.at(factors[i].source.element(c)));
    }
    h.map[h.source.element(static_cast<int>(e))] = tuple_name(parts);
  }
  return h;
}

SubalgebraEmbedding embed_product_of_subalgebras(
    const Signature& sig, const std::vector<FiniteQuantitativeAlgebra>& subs,
    const std::vector<FiniteQuantitativeAlgebra>& parents, const Budgets& budgets) {
  if (subs.size() != parents.size()) {
    throw ValidationError("subalgebra and parent lists have different lengths");
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Verdict v = is_subalgebra_of(subs[i], parents[i]);
    if (!v) {
      throw ValidationError("factor " + std::to_string(i) +
                            " is not a subalgebra of its parent: " + v.issues.front());
    }
  }
  SubalgebraEmbedding e{direct_product(sig, subs, budgets), direct_product(sig, parents, budgets)};
  Verdict v = is_subalgebra_of(e.sub, e.parent);
  if (!v) throw ValidationError("product embedding failed: " + v.issues.front());
  return e;
}

}  // namespace qaw
