// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/derivation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qaw/error.hpp"

namespace qaw {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Refl: return "Refl";
    case Rule::Symm: return "Symm";
    case Rule::Triang: return "Triang";
    case Rule::Max: return "Max";
    case Rule::Arch: return "Arch";
    case Rule::NExp: return "NExp";
    case Rule::Subst: return "Subst";
    case Rule::Cut: return "Cut";
    case Rule::Assumpt: return "Assumpt";
  }
  return "?";
}

void ProofStep::normalize() {
  std::sort(hypotheses.begin(), hypotheses.end());
  hypotheses.erase(std::unique(hypotheses.begin(), hypotheses.end(),
                               [](const QuantitativeEquation& a, const QuantitativeEquation& b) {
                                 return a == b;
                               }),
                   hypotheses.end());
}

std::string ProofObject::str() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ProofStep& s = steps[i];
    out += std::to_string(i + 1) + ". [";
    for (std::size_t h = 0; h < s.hypotheses.size(); ++h) {
      if (h) out += " ; ";
      out += s.hypotheses[h].str();
    }
    out += "] |- " + s.conclusion.str() + "  (" + rule_name(s.rule);
    for (std::size_t p = 0; p < s.premises.size(); ++p) {
      out += p == 0 ? " " : (s.rule == Rule::Cut && p == 1 ? "; " : " ");
      if (s.premises[p].is_axiom) {
        out += "axiom " + std::to_string(s.premises[p].index + 1);
      } else {
        out += std::to_string(s.premises[p].index + 1);
      }
    }
    if (s.subst) out += " " + s.subst->str();
    out += ")\n";
  }
  return out;
}

namespace {

struct Judgement {
  std::vector<QuantitativeEquation> hypotheses;  // sorted, deduped
  QuantitativeEquation conclusion;
};

bool same_hypotheses(const std::vector<QuantitativeEquation>& a,
                     const std::vector<QuantitativeEquation>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

}  // namespace

ProofCheckResult check_proof(const ProofObject& proof,
                             const std::vector<ConditionalEquation>& axioms) {
  auto fail = [](std::size_t step, const std::string& why) {
    return ProofCheckResult{false, step, why};
  };
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ProofStep& s = proof.steps[i];

    auto resolve = [&](const ProofRef& r) -> std::optional<Judgement> {
      if (r.is_axiom) {
        if (r.index >= axioms.size()) return std::nullopt;
        Judgement j{axioms[r.index].hypotheses, axioms[r.index].conclusion};
        std::sort(j.hypotheses.begin(), j.hypotheses.end());
        return j;
      }
      if (r.index >= i) return std::nullopt;  // forward or self reference
      return Judgement{proof.steps[r.index].hypotheses, proof.steps[r.index].conclusion};
    };

    std::vector<Judgement> prem;
    bool bad_ref = false;
    for (const ProofRef& r : s.premises) {
      auto j = resolve(r);
      if (!j) {
        bad_ref = true;
        break;
      }
      prem.push_back(*j);
    }
    if (bad_ref) return fail(i, "dangling premise reference");

    switch (s.rule) {
      case Rule::Refl:
        if (!prem.empty()) return fail(i, "Refl takes no premises");
        if (!(s.conclusion.left == s.conclusion.right) || !s.conclusion.bound.is_zero()) {
          return fail(i, "Refl must conclude t =[0] t");
        }
        break;
      case Rule::Assumpt: {
        if (!prem.empty()) return fail(i, "Assumpt takes no premises");
        bool present = false;
        for (const auto& h : s.hypotheses) {
          if (h == s.conclusion) present = true;
        }
        if (!present) return fail(i, "Assumpt conclusion is not among the hypotheses");
        break;
      }
      case Rule::Symm: {
        if (prem.size() != 1) return fail(i, "Symm takes one premise");
        if (!same_hypotheses(prem[0].hypotheses, s.hypotheses)) {
          return fail(i, "Symm premise proved under a different hypothesis set");
        }
        const auto& p = prem[0].conclusion;
        if (!(s.conclusion.left == p.right) || !(s.conclusion.right == p.left) ||
            s.conclusion.bound != p.bound) {
          return fail(i, "Symm conclusion is not the premise flipped");
        }
        break;
      }
      case Rule::Triang: {
        if (prem.size() != 2) return fail(i, "Triang takes two premises");
        for (const auto& p : prem) {
          if (!same_hypotheses(p.hypotheses, s.hypotheses)) {
            return fail(i, "Triang premise proved under a different hypothesis set");
          }
        }
        const auto& p1 = prem[0].conclusion;
        const auto& p2 = prem[1].conclusion;
        if (!(p1.right == p2.left)) return fail(i, "Triang premises do not chain");
        if (!(s.conclusion.left == p1.left) || !(s.conclusion.right == p2.right)) {
          return fail(i, "Triang conclusion terms do not match the chain ends");
        }
        if (s.conclusion.bound != p1.bound + p2.bound) {
          return fail(i, "Triang conclusion bound is not the sum of the premise bounds");
        }
        break;
      }
      case Rule::Max: {
        if (prem.size() != 1) return fail(i, "Max takes one premise");
        if (!same_hypotheses(prem[0].hypotheses, s.hypotheses)) {
          return fail(i, "Max premise proved under a different hypothesis set");
        }
        const auto& p = prem[0].conclusion;
        if (!(s.conclusion.left == p.left) || !(s.conclusion.right == p.right)) {
          return fail(i, "Max must keep the terms");
        }
        if (!(p.bound < s.conclusion.bound)) {
          return fail(i, "Max requires a strictly larger bound");
        }
        break;
      }
      case Rule::Arch: {
        if (prem.empty()) return fail(i, "Arch needs at least one cited premise");
        bool reached = false;
        for (const auto& p : prem) {
          if (!same_hypotheses(p.hypotheses, s.hypotheses)) {
            return fail(i, "Arch premise proved under a different hypothesis set");
          }
          if (!(p.conclusion.left == s.conclusion.left) ||
              !(p.conclusion.right == s.conclusion.right)) {
            return fail(i, "Arch premises must bound the same pair of terms");
          }
          if (p.conclusion.bound <= s.conclusion.bound) reached = true;
        }
        if (!reached) {
          return fail(i,
                      "infinitary Arch use: every cited bound exceeds the conclusion bound");
        }
        break;
      }
      case Rule::NExp: {
        const Term& l = s.conclusion.left;
        const Term& r = s.conclusion.right;
        if (!l.is_application() || !r.is_application() || l.head() != r.head() ||
            l.args().size() != r.args().size()) {
          return fail(i, "NExp conclusion must apply one symbol on both sides");
        }
        if (prem.size() != l.args().size()) {
          return fail(i, "NExp needs one premise per argument position");
        }
        for (std::size_t k = 0; k < prem.size(); ++k) {
          if (!same_hypotheses(prem[k].hypotheses, s.hypotheses)) {
            return fail(i, "NExp premise proved under a different hypothesis set");
          }
          const auto& p = prem[k].conclusion;
          if (!(p.left == l.args()[k]) || !(p.right == r.args()[k])) {
            return fail(i, "NExp premise does not match argument position " + std::to_string(k));
          }
          if (p.bound != s.conclusion.bound) {
            return fail(i, "NExp premises must share the conclusion bound");
          }
        }
        break;
      }
      case Rule::Subst: {
        if (prem.size() != 1) return fail(i, "Subst takes one premise");
        if (!s.subst) return fail(i, "Subst step carries no substitution");
        const Substitution& sub = *s.subst;
        const auto& p = prem[0];
        QuantitativeEquation want(sub(p.conclusion.left), sub(p.conclusion.right),
                                  p.conclusion.bound);
        if (!(want == s.conclusion)) {
          return fail(i, "Subst conclusion is not the instantiated premise");
        }
        std::vector<QuantitativeEquation> mapped;
        for (const auto& h : p.hypotheses) {
          mapped.emplace_back(sub(h.left), sub(h.right), h.bound);
        }
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end(),
                                 [](const QuantitativeEquation& a, const QuantitativeEquation& b) {
                                   return a == b;
                                 }),
                     mapped.end());
        if (!same_hypotheses(mapped, s.hypotheses)) {
          return fail(i, "Subst hypotheses are not the instantiated premise hypotheses");
        }
        break;
      }
      case Rule::Cut: {
        if (prem.empty()) return fail(i, "Cut needs the judgement being cut");
        const Judgement& q = prem[0];
        if (!(q.conclusion == s.conclusion)) {
          return fail(i, "Cut conclusion must match the cited judgement");
        }
        for (std::size_t k = 1; k < prem.size(); ++k) {
          if (!same_hypotheses(prem[k].hypotheses, s.hypotheses)) {
            return fail(i, "Cut side premise proved under a different hypothesis set");
          }
          bool in_theta = false;
          for (const auto& t : q.hypotheses) {
            if (t == prem[k].conclusion) in_theta = true;
          }
          if (!in_theta) {
            return fail(i, "Cut side premise proves an equation outside the cut set");
          }
        }
        for (const auto& t : q.hypotheses) {
          bool covered = false;
          for (std::size_t k = 1; k < prem.size(); ++k) {
            if (t == prem[k].conclusion) covered = true;
          }
          if (!covered) {
            return fail(i, "Cut set member " + t.str() + " has no proof among the premises");
          }
        }
        break;
      }
    }
  }
  return ProofCheckResult{};
}

std::vector<Term> build_universe(const Signature& sig,
                                 const std::vector<QuantitativeEquation>& hypotheses,
                                 const QuantitativeEquation& goal,
                                 const std::vector<ConditionalEquation>& axioms,
                                 const Budgets& budgets) {
  for (const auto& h : hypotheses) validate_equation(sig, h);
  validate_equation(sig, goal);
  for (const auto& a : axioms) validate_equation(sig, a);

  std::set<Term> uni;
  auto add_closed = [&uni, &budgets](const Term& t) {
    auto subs = subterms(t);
    uni.insert(subs.begin(), subs.end());
    if (uni.size() > budgets.term_cap) {
      throw BudgetError("universe exceeded the term cap");
    }
  };
  for (const auto& h : hypotheses) {
    add_closed(h.left);
    add_closed(h.right);
  }
  add_closed(goal.left);
  add_closed(goal.right);

  std::uint64_t steps = 0;
  for (int round = 0; round < budgets.depth; ++round) {
    std::vector<Term> snapshot(uni.begin(), uni.end());
    std::size_t before = uni.size();
    for (const auto& ax : axioms) {
      std::vector<std::string> vars = variables_of(ax);
      std::vector<Term> ax_terms;
      for (const auto& h : ax.hypotheses) {
        ax_terms.push_back(h.left);
        ax_terms.push_back(h.right);
      }
      ax_terms.push_back(ax.conclusion.left);
      ax_terms.push_back(ax.conclusion.right);

      if (vars.empty()) {
        for (const auto& t : ax_terms) add_closed(t);
        continue;
      }
      std::vector<std::size_t> idx(vars.size(), 0);
      while (true) {
        if (++steps > budgets.step_cap) {
          throw BudgetError("universe construction exceeded the step budget");
        }
        std::map<std::string, Term> m;
        for (std::size_t v = 0; v < vars.size(); ++v) m.emplace(vars[v], snapshot[idx[v]]);
        Substitution sub(std::move(m));
        for (const auto& t : ax_terms) add_closed(sub(t));
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == snapshot.size()) idx[--k] = 0;
        if (k == 0) break;
      }
    }
    if (uni.size() == before) break;  // already closed under instantiation
  }
  return std::vector<Term>(uni.begin(), uni.end());
}

DerivedDistanceTable::DerivedDistanceTable(std::vector<Term> universe,
                                           std::vector<ExtRational> values)
    : universe_(std::move(universe)), values_(std::move(values)) {
  if (values_.size() != universe_.size() * universe_.size()) {
    throw ValidationError("distance table shape mismatch");
  }
  if (!std::is_sorted(universe_.begin(), universe_.end())) {
    throw ValidationError("distance table universe must be sorted");
  }
}

int DerivedDistanceTable::index_of(const Term& t) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), t);
  if (it == universe_.end() || !(*it == t)) return -1;
  return static_cast<int>(it - universe_.begin());
}

const ExtRational& DerivedDistanceTable::bound(int i, int j) const {
  return values_[static_cast<std::size_t>(i) * universe_.size() + static_cast<std::size_t>(j)];
}

const ExtRational& DerivedDistanceTable::bound(const Term& s, const Term& t) const {
  int i = index_of(s);
  int j = index_of(t);
  if (i < 0) throw ValidationError("term " + s.str() + " not in the saturated universe");
  if (j < 0) throw ValidationError("term " + t.str() + " not in the saturated universe");
  return bound(i, j);
}

namespace {

struct Event {
  enum class Kind { Refl, Assumpt, Symm, Triang, NExp, AxiomApp } kind;
  Term left;
  Term right;
  Rational bound;
  std::vector<std::size_t> prem;  // earlier events
  std::optional<Term> middle;     // Triang chaining term
  std::size_t axiom_index = 0;    // AxiomApp
  std::optional<Substitution> subst;

  Event(Kind k, Term l, Term r, Rational b)
      : kind(k), left(std::move(l)), right(std::move(r)), bound(b) {}
};

}  // namespace

// Append-only derivation record. Every event proves exactly its recorded
// bound, citing only earlier events, so reconstruction terminates.
class DerivationLog {
public:
  std::vector<Term> universe;
  std::vector<QuantitativeEquation> hypotheses;  // the global set, canonical
  std::vector<ConditionalEquation> axioms;
  std::vector<Event> events;
  std::vector<std::size_t> best;  // n*n; index of the event proving the cell, or npos
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t cell(std::size_t i, std::size_t j) const { return i * universe.size() + j; }
};

namespace {

struct ProofBuilder {
  const DerivationLog& log;
  ProofObject proof;
  std::map<std::size_t, std::size_t> memo;  // event -> step index

  explicit ProofBuilder(const DerivationLog& l) : log(l) {}

  std::size_t push(ProofStep step) {
    proof.steps.push_back(std::move(step));
    return proof.steps.size() - 1;
  }

  std::size_t step_ref(Rule rule, std::vector<std::size_t> prem_steps,
                       QuantitativeEquation concl) {
    ProofStep s(rule, log.hypotheses, std::move(concl));
    for (std::size_t p : prem_steps) s.premises.push_back(ProofRef{false, p});
    return push(std::move(s));
  }

  // Proves the event's own oriented equation; memoized.
  std::size_t emit(std::size_t ev_index) {
    auto it = memo.find(ev_index);
    if (it != memo.end()) return it->second;
    const Event& ev = log.events[ev_index];
    QuantitativeEquation concl(ev.left, ev.right, ev.bound);
    std::size_t out = 0;
    switch (ev.kind) {
      case Event::Kind::Refl:
        out = step_ref(Rule::Refl, {}, concl);
        break;
      case Event::Kind::Assumpt:
        out = step_ref(Rule::Assumpt, {}, concl);
        break;
      case Event::Kind::Symm: {
        std::size_t p = emit(ev.prem[0]);
        out = step_ref(Rule::Symm, {p}, concl);
        break;
      }
      case Event::Kind::Triang: {
        std::size_t p1 = oriented(ev.prem[0], ev.left, *ev.middle);
        std::size_t p2 = oriented(ev.prem[1], *ev.middle, ev.right);
        out = step_ref(Rule::Triang, {p1, p2}, concl);
        break;
      }
      case Event::Kind::NExp: {
        std::vector<std::size_t> args;
        for (std::size_t k = 0; k < ev.prem.size(); ++k) {
          std::size_t p = oriented(ev.prem[k], ev.left.args()[k], ev.right.args()[k]);
          args.push_back(lifted(p, ev.bound));
        }
        out = step_ref(Rule::NExp, std::move(args), concl);
        break;
      }
      case Event::Kind::AxiomApp: {
        const ConditionalEquation& ax = log.axioms[ev.axiom_index];
        const Substitution& sub = *ev.subst;
        std::vector<std::size_t> side;
        for (std::size_t k = 0; k < ax.hypotheses.size(); ++k) {
          const auto& h = ax.hypotheses[k];
          std::size_t p = oriented(ev.prem[k], sub(h.left), sub(h.right));
          side.push_back(lifted(p, h.bound));
        }
        std::vector<QuantitativeEquation> inst_hyps;
        for (const auto& h : ax.hypotheses) {
          inst_hyps.emplace_back(sub(h.left), sub(h.right), h.bound);
        }
        ProofStep subst_step(Rule::Subst, std::move(inst_hyps), concl);
        subst_step.premises.push_back(ProofRef{true, ev.axiom_index});
        subst_step.subst = sub;
        std::size_t q = push(std::move(subst_step));
        std::vector<std::size_t> cut_prem;
        cut_prem.push_back(q);
        for (std::size_t p : side) cut_prem.push_back(p);
        out = step_ref(Rule::Cut, std::move(cut_prem), concl);
        break;
      }
    }
    memo[ev_index] = out;
    return out;
  }

  // Proves want_left =[event bound] want_right, flipping with Symm if the
  // event was derived the other way round.
  std::size_t oriented(std::size_t ev_index, const Term& want_left, const Term& want_right) {
    const Event& ev = log.events[ev_index];
    std::size_t base = emit(ev_index);
    if (ev.left == want_left && ev.right == want_right) return base;
    return step_ref(Rule::Symm, {base}, QuantitativeEquation(want_left, want_right, ev.bound));
  }

  // Relaxes a proved bound up to target with Max when needed.
  std::size_t lifted(std::size_t step, const Rational& target) {
    const QuantitativeEquation& got = proof.steps[step].conclusion;
    if (got.bound == target) return step;
    return step_ref(Rule::Max, {step}, QuantitativeEquation(got.left, got.right, target));
  }
};

struct Saturator {
  const Signature& sig;
  const std::vector<ConditionalEquation>& axioms;
  const Budgets& budgets;
  bool record;
  std::shared_ptr<DerivationLog> log;

  std::vector<Term> uni;
  std::map<Term, std::size_t> index;
  std::vector<ExtRational> val;
  std::uint64_t steps = 0;
  bool changed = false;

  Saturator(const Signature& s, const std::vector<QuantitativeEquation>& hyps,
            const std::vector<ConditionalEquation>& axs, const std::vector<Term>& universe,
            const Budgets& b, bool rec)
      : sig(s), axioms(axs), budgets(b), record(rec) {
    std::set<Term> uset(universe.begin(), universe.end());
    uni.assign(uset.begin(), uset.end());
    for (std::size_t i = 0; i < uni.size(); ++i) {
      validate_term(sig, uni[i]);
      index.emplace(uni[i], i);
    }
    for (const Term& t : uni) {
      for (const Term& a : t.args()) {
        if (!index.count(a)) {
          throw ValidationError("universe not closed under required subterms: missing " +
                                a.str());
        }
      }
    }
    std::size_t n = uni.size();
    val.assign(n * n, ExtRational::infinity());
    log = std::make_shared<DerivationLog>();
    log->universe = uni;
    log->axioms = axioms;
    {
      std::vector<QuantitativeEquation> hs = hyps;
      std::sort(hs.begin(), hs.end());
      hs.erase(std::unique(hs.begin(), hs.end(),
                           [](const QuantitativeEquation& a, const QuantitativeEquation& b) {
                             return a == b;
                           }),
               hs.end());
      log->hypotheses = hs;
    }
    log->best.assign(n * n, DerivationLog::npos);

    for (std::size_t i = 0; i < n; ++i) {
      Event ev(Event::Kind::Refl, uni[i], uni[i], Rational(0));
      improve(i, i, ExtRational(Rational(0)), std::move(ev));
    }
    for (const auto& h : log->hypotheses) {
      validate_equation(sig, h);
      auto li = index.find(h.left);
      auto ri = index.find(h.right);
      if (li == index.end() || ri == index.end()) {
        throw ValidationError("hypothesis term missing from the universe: " + h.str());
      }
      Event ev(Event::Kind::Assumpt, h.left, h.right, h.bound);
      improve(li->second, ri->second, ExtRational(h.bound), std::move(ev));
    }
  }

  void tick() {
    if (++steps > budgets.step_cap) {
      throw BudgetError("saturation exceeded the step budget");
    }
  }

  const ExtRational& at(std::size_t i, std::size_t j) const { return val[i * uni.size() + j]; }

  void improve(std::size_t i, std::size_t j, const ExtRational& nb, Event ev) {
    std::size_t n = uni.size();
    if (!(nb < val[i * n + j])) return;
    val[i * n + j] = nb;
    val[j * n + i] = nb;
    changed = true;
    if (record) {
      log->events.push_back(std::move(ev));
      log->best[i * n + j] = log->events.size() - 1;
      log->best[j * n + i] = log->events.size() - 1;
    }
  }

  std::size_t best_event(std::size_t i, std::size_t j) const {
    return log->best[i * uni.size() + j];
  }

  void triang_pass() {
    std::size_t n = uni.size();
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (at(i, k).is_infinite()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          tick();
          ExtRational cand = at(i, k) + at(k, j);
          if (cand < at(i, j)) {
            Event ev(Event::Kind::Triang, uni[i], uni[j], cand.finite());
            if (record) {
              ev.prem = {best_event(i, k), best_event(k, j)};
              ev.middle = uni[k];
            }
            improve(i, j, cand, std::move(ev));
          }
        }
      }
    }
  }

  void nexp_pass() {
    std::size_t n = uni.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!uni[i].is_application() || uni[i].args().empty()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !uni[j].is_application()) continue;
        if (uni[i].head() != uni[j].head()) continue;
        if (uni[i].args().size() != uni[j].args().size()) continue;
        tick();
        ExtRational cand(Rational(0));
        for (std::size_t k = 0; k < uni[i].args().size() && !cand.is_infinite(); ++k) {
          cand = max(cand, at(index.at(uni[i].args()[k]), index.at(uni[j].args()[k])));
        }
        if (cand < at(i, j)) {
          Event ev(Event::Kind::NExp, uni[i], uni[j], cand.finite());
          if (record) {
            for (std::size_t k = 0; k < uni[i].args().size(); ++k) {
              ev.prem.push_back(
                  best_event(index.at(uni[i].args()[k]), index.at(uni[j].args()[k])));
            }
          }
          improve(i, j, cand, std::move(ev));
        }
      }
    }
  }

  void axiom_pass() {
    for (std::size_t a = 0; a < axioms.size(); ++a) {
      const ConditionalEquation& ax = axioms[a];
      std::vector<std::string> vars = variables_of(ax);
      if (!vars.empty() && uni.empty()) continue;
      std::vector<std::size_t> idx(vars.size(), 0);
      while (true) {
        tick();
        std::map<std::string, Term> m;
        for (std::size_t v = 0; v < vars.size(); ++v) m.emplace(vars[v], uni[idx[v]]);
        Substitution sub(std::move(m));
        apply_axiom(a, sub);
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == uni.size()) idx[--k] = 0;
        if (k == 0 || vars.empty()) break;
      }
    }
  }

  void apply_axiom(std::size_t a, const Substitution& sub) {
    const ConditionalEquation& ax = axioms[a];
    Term cl = sub(ax.conclusion.left);
    Term cr = sub(ax.conclusion.right);
    auto cli = index.find(cl);
    auto cri = index.find(cr);
    if (cli == index.end() || cri == index.end()) return;
    if (!(ExtRational(ax.conclusion.bound) < at(cli->second, cri->second))) return;
    std::vector<std::size_t> prem;
    for (const auto& h : ax.hypotheses) {
      auto hl = index.find(sub(h.left));
      auto hr = index.find(sub(h.right));
      if (hl == index.end() || hr == index.end()) return;
      if (!(at(hl->second, hr->second) <= ExtRational(h.bound))) return;
      if (record) prem.push_back(best_event(hl->second, hr->second));
    }
    Event ev(Event::Kind::AxiomApp, cl, cr, ax.conclusion.bound);
    ev.prem = std::move(prem);
    ev.axiom_index = a;
    if (record) ev.subst = sub;
    improve(cli->second, cri->second, ExtRational(ax.conclusion.bound), std::move(ev));
  }

  void run() {
    do {
      changed = false;
      triang_pass();
      nexp_pass();
      axiom_pass();
    } while (changed);
  }
};

}  // namespace

ProofObject SaturationResult::proof_for(const Term& s, const Term& t,
                                        const Rational& target) const {
  if (!log) throw ValidationError("saturation ran without proof recording");
  int i = table.index_of(s);
  int j = table.index_of(t);
  if (i < 0 || j < 0) throw ValidationError("queried term missing from the universe");
  const ExtRational& b = table.bound(i, j);
  if (ExtRational(target) < b) {
    throw ValidationError("no derivation of " + s.str() + " =[" + target.str() + "] " + t.str() +
                          " within this universe (least derivable bound " + b.str() + ")");
  }
  std::size_t ev = log->best[log->cell(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
  if (ev == DerivationLog::npos) {
    throw ValidationError("no recorded derivation for the queried pair");
  }
  ProofBuilder pb(*log);
  std::size_t step = pb.oriented(ev, s, t);
  pb.lifted(step, target);
  return std::move(pb.proof);
}

SaturationResult least_derivable_distance(const Signature& sig,
                                          const std::vector<QuantitativeEquation>& hypotheses,
                                          const std::vector<ConditionalEquation>& axioms,
                                          const std::vector<Term>& universe,
                                          const Budgets& budgets, bool record_proofs) {
  for (const auto& ax : axioms) validate_equation(sig, ax);
  Saturator sat(sig, hypotheses, axioms, universe, budgets, record_proofs);
  sat.run();
  return SaturationResult{DerivedDistanceTable(sat.uni, sat.val),
                          record_proofs ? sat.log : nullptr};
}

bool is_consistent_probe(const Signature& sig, const std::vector<ConditionalEquation>& axioms,
                         const std::string& x, const std::string& y, const Budgets& budgets) {
  if (!sig.has_variable(x) || !sig.has_variable(y)) {
    throw ValidationError("probe variables must be declared");
  }
  if (x == y) throw ValidationError("probe needs two distinct variables");
  QuantitativeEquation goal(Term::variable(x), Term::variable(y), Rational(0));
  std::vector<Term> uni = build_universe(sig, {}, goal, axioms, budgets);
  SaturationResult r = least_derivable_distance(sig, {}, axioms, uni, budgets, false);
  return !r.table.bound(goal.left, goal.right).is_zero();
}

}  // namespace qaw
