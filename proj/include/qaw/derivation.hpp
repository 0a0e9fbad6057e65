// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_DERIVATION_HPP
#define QAW_DERIVATION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qaw/budgets.hpp"
#include "qaw/equation.hpp"
#include "qaw/rational.hpp"
#include "qaw/term.hpp"

namespace qaw {

// Deduction rules of the indexed equational calculus. Refl derives zero
// self-distance; Symm flips an equation; Triang chains two equations adding
// the bounds; Max relaxes a bound upward by a strictly positive amount; Arch
// tightens to the infimum of an already-derivable family; NExp pushes a
// common bound through an operation; Subst instantiates a judgement; Cut
// composes judgements; Assumpt reads a hypothesis off.
enum class Rule { Refl, Symm, Triang, Max, Arch, NExp, Subst, Cut, Assumpt };

std::string rule_name(Rule r);

// A premise is either an earlier proof step or one of the theory's axioms.
struct ProofRef {
  bool is_axiom = false;
  std::size_t index = 0;
};

// One derivation step: the judgement "hypotheses |- conclusion" obtained by
// the given rule from the referenced premises.
struct ProofStep {
  Rule rule = Rule::Refl;
  std::vector<ProofRef> premises;
  std::optional<Substitution> subst;  // Subst only
  std::vector<QuantitativeEquation> hypotheses;
  QuantitativeEquation conclusion;

  ProofStep(Rule r, std::vector<QuantitativeEquation> hyps, QuantitativeEquation concl)
      : rule(r), hypotheses(std::move(hyps)), conclusion(std::move(concl)) {
    normalize();
  }
  void normalize();  // sort + dedupe the hypothesis set
};

struct ProofObject {
  std::vector<ProofStep> steps;

  // One line per step: index, judgement, rule and premise references.
  std::string str() const;
};

struct ProofCheckResult {
  bool ok = true;
  std::size_t failing_step = 0;
  std::string reason;
};

// Validates every step against its rule. An Arch step must cite a premise
// whose bound already reaches the conclusion bound; a strictly-infinitary
// use (all cited bounds above the conclusion) is rejected with a reason
// marked "infinitary".
ProofCheckResult check_proof(const ProofObject& proof,
                             const std::vector<ConditionalEquation>& axioms);

// Term universe for saturation: subterm closure of the hypotheses and goal,
// then `depth` rounds of axiom instantiation with substitutions drawn from
// the universe built so far, subterm-closed again. Deterministic; throws
// BudgetError past the caps.
std::vector<Term> build_universe(const Signature& sig,
                                 const std::vector<QuantitativeEquation>& hypotheses,
                                 const QuantitativeEquation& goal,
                                 const std::vector<ConditionalEquation>& axioms,
                                 const Budgets& budgets);

// Pointwise-least distance table over U closed under the deduction rules
// with axiom instantiation restricted to U. Derivability of s =[e] t is read
// off as bound(s, t) <= e.
class DerivedDistanceTable {
public:
  DerivedDistanceTable(std::vector<Term> universe, std::vector<ExtRational> values);

  const std::vector<Term>& universe() const { return universe_; }
  int index_of(const Term& t) const;  // -1 when absent
  const ExtRational& bound(int i, int j) const;
  const ExtRational& bound(const Term& s, const Term& t) const;

private:
  std::vector<Term> universe_;
  std::vector<ExtRational> values_;
};

class DerivationLog;  // proof-recording companion, defined in the source

struct SaturationResult {
  DerivedDistanceTable table;
  // Reconstructs a checkable proof of s =[bound(s,t)] t, or of s =[e] t for
  // any e >= bound(s,t). Only available when recording was requested.
  std::shared_ptr<DerivationLog> log;

  ProofObject proof_for(const Term& s, const Term& t, const Rational& bound) const;
};

// Saturates the universe under Assumpt, Refl, Symm, Triang (as shortest
// paths), NExp and bound-respecting axiom instances, to the least fixpoint.
// Bounds only ever decrease and live in a fixed denominator lattice, so the
// loop terminates; a step budget guards it anyway.
SaturationResult least_derivable_distance(const Signature& sig,
                                          const std::vector<QuantitativeEquation>& hypotheses,
                                          const std::vector<ConditionalEquation>& axioms,
                                          const std::vector<Term>& universe,
                                          const Budgets& budgets, bool record_proofs = false);

// Derives the distance between two distinct variables from the axioms alone
// on a universe of the given depth; distance 0 between distinct variables
// means every model collapses them, i.e. the theory forces degeneracy there.
bool is_consistent_probe(const Signature& sig, const std::vector<ConditionalEquation>& axioms,
                         const std::string& x, const std::string& y, const Budgets& budgets);

}  // namespace qaw

#endif
