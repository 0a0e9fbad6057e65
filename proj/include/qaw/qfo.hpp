// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_QFO_HPP
#define QAW_QFO_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaw/algebra.hpp"
#include "qaw/budgets.hpp"
#include "qaw/equation.hpp"
#include "qaw/rational.hpp"
#include "qaw/term.hpp"

namespace qaw {

enum class Flag { Closed, Open };

// Up-closed set of rationals attached to an ordered pair of elements: either
// empty (never related), the closed ray [bound, inf), or the open ray
// (bound, inf). Every up-closed set of non-negative rationals has one of
// these three shapes, so the encoding is lossless.
struct ThresholdEntry {
  bool empty = false;
  Rational bound;
  Flag flag = Flag::Closed;

  static ThresholdEntry infinite();
  static ThresholdEntry at(const Rational& bound, Flag flag);

  bool contains(const Rational& eps) const;
  bool subset_of(const ThresholdEntry& o) const;

  std::string str() const;  // "bound 3/2 closed" or "infinite"

  bool operator==(const ThresholdEntry& o) const;
  bool operator!=(const ThresholdEntry& o) const { return !(*this == o); }
};

// Set intersection and elementwise sum of rays, both up-closed again.
ThresholdEntry intersect(const ThresholdEntry& a, const ThresholdEntry& b);
ThresholdEntry ray_sum(const ThresholdEntry& a, const ThresholdEntry& b);

// Finite carrier with interpreted operations and one threshold entry per
// ordered pair. Construction checks shapes only; the six structure axioms
// are semantic properties checked by check_qfo_axioms.
class ThresholdStructure {
public:
  ThresholdStructure() = default;
  ThresholdStructure(Signature sig, std::vector<std::string> carrier,
                     std::map<std::string, OpTable> ops, std::vector<ThresholdEntry> entries);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  const std::map<std::string, OpTable>& ops() const { return ops_; }
  const std::vector<ThresholdEntry>& entries() const { return entries_; }

  int index_of(const std::string& element) const;  // -1 when absent
  int require_index(const std::string& element) const;
  const std::string& element(int i) const { return carrier_[static_cast<std::size_t>(i)]; }

  const ThresholdEntry& entry(int i, int j) const;
  const ThresholdEntry& entry(const std::string& a, const std::string& b) const;

  int op_apply(const std::string& symbol, const std::vector<int>& args) const;

  bool same_as(const ThresholdStructure& o) const;  // exact equality

private:
  Signature sig_;
  std::vector<std::string> carrier_;
  std::map<std::string, OpTable> ops_;
  std::vector<ThresholdEntry> entries_;
  std::map<std::string, int> index_;
};

// Per-axiom verdicts, in order:
//   1 zero self-distance and separation of distinct elements
//   2 symmetry
//   3 triangle composition of rays
//   4 up-closure (built into the encoding, always passes)
//   5 non-expansiveness of operations at every threshold
//   6 every finite threshold set is a closed ray
struct QfoAxiomReport {
  std::array<Verdict, 6> axioms;

  bool all_pass() const;
  std::vector<int> failing() const;  // 1-based axiom numbers
  std::string summary() const;
};

QfoAxiomReport check_qfo_axioms(const ThresholdStructure& m);

// Distance d becomes the closed ray [d, inf); infinite distance becomes the
// empty set. Operations are shared unchanged.
ThresholdStructure to_qfo(const FiniteQuantitativeAlgebra& a);

// Bounds become distances. Requires all six axioms; throws ValidationError
// naming the failing axioms otherwise.
FiniteQuantitativeAlgebra to_algebra(const ThresholdStructure& m);

// Principal proper filter over the index set {0, .., index_count-1},
// generated by the nonempty subset J.
struct FilterSpec {
  std::size_t index_count = 0;
  std::vector<std::size_t> generator;

  std::string str() const;
};

// Carrier: tuples over the generator coordinates (two full-product tuples are
// filter-equal exactly when they agree there). Entries: intersection of the
// per-coordinate rays. Operations act coordinatewise.
ThresholdStructure reduced_product(const std::vector<ThresholdStructure>& ms,
                                   const FilterSpec& filter, const Budgets& budgets);

// Induced structure on an operation-closed subset, parent order, identical
// entries. Throws when the subset escapes under some operation.
ThresholdStructure subobject(const ThresholdStructure& m,
                             const std::vector<std::string>& subset);

// True iff the candidate passes all six axioms and embeds into the reduced
// product by some injection preserving operations and entries exactly. The
// embedding search is exhaustive with backtracking.
bool is_subreduced_product(const ThresholdStructure& candidate,
                           const std::vector<ThresholdStructure>& ms, const FilterSpec& filter,
                           const Budgets& budgets);

// Atom of a universal Horn formula: either a threshold claim s =[bound] t or
// a term equality s == t.
struct HornAtom {
  bool is_threshold = true;
  Term left;
  Term right;
  Rational bound;

  static HornAtom threshold(Term l, Term r, const Rational& bound);
  static HornAtom equality(Term l, Term r);

  std::string str() const;
};

// forall vars . (body_1 & .. & body_k) -> head, with every quantifier
// universal. An empty body is the implication from the empty conjunction.
struct HornFormula {
  std::vector<std::string> vars;
  std::vector<HornAtom> body;
  HornAtom head;

  std::string str() const;
};

struct HornResult {
  bool holds = true;
  std::optional<Assignment> counterexample;
  std::string detail;
};

// Exhaustive check over all valuations of the quantified variables. Atoms
// may use only quantified variables; anything else is a validation error.
HornResult eval_horn(const ThresholdStructure& m, const HornFormula& phi);

// Hypotheses become body atoms, the conclusion the head, quantifying every
// variable that occurs. The inverse reads term equalities as bound-zero
// equations.
HornFormula horn_of_conditional(const ConditionalEquation& ce);
ConditionalEquation conditional_of_horn(const HornFormula& phi);

}  // namespace qaw

#endif
