// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_ALGEBRA_HPP
#define QAW_ALGEBRA_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaw/budgets.hpp"
#include "qaw/equation.hpp"
#include "qaw/rational.hpp"
#include "qaw/term.hpp"

namespace qaw {

// Outcome of a structural or semantic check, with human-readable issues.
struct Verdict {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(const std::string& issue) {
    ok = false;
    issues.push_back(issue);
  }
  explicit operator bool() const { return ok; }
  std::string summary() const;
};

// Total operation table: entry for argument tuple (a_1..a_k) lives at the
// mixed-radix index a_1*n^(k-1) + ... + a_k where n is the carrier size.
struct OpTable {
  int arity = 0;
  std::vector<int> table;
};

// Maps each variable name to a carrier element name.
using Assignment = std::map<std::string, std::string>;

std::string assignment_str(const Assignment& a);

// Finite carrier with interpreted operations and a rational distance matrix
// that may contain infinity. Construction checks shapes (table sizes, index
// ranges, matrix dimensions); the metric and non-expansiveness axioms are
// semantic properties checked by validate_algebra.
class FiniteQuantitativeAlgebra {
public:
  // Void algebra over the empty signature; a placeholder for members that are
  // filled in after construction.
  FiniteQuantitativeAlgebra() = default;
  FiniteQuantitativeAlgebra(Signature sig, std::vector<std::string> carrier,
                            std::map<std::string, OpTable> ops,
                            std::vector<ExtRational> distances);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  const std::map<std::string, OpTable>& ops() const { return ops_; }
  const std::vector<ExtRational>& distances() const { return dist_; }

  int index_of(const std::string& element) const;  // -1 when absent
  int require_index(const std::string& element) const;
  const std::string& element(int i) const { return carrier_[static_cast<std::size_t>(i)]; }

  const ExtRational& distance(int i, int j) const;
  const ExtRational& distance(const std::string& a, const std::string& b) const;

  int op_apply(const std::string& symbol, const std::vector<int>& args) const;

  bool same_as(const FiniteQuantitativeAlgebra& o) const;  // exact equality

private:
  Signature sig_;
  std::vector<std::string> carrier_;
  std::map<std::string, OpTable> ops_;
  std::vector<ExtRational> dist_;
  std::map<std::string, int> index_;
};

// Metric axioms (zero self-distance, separation, symmetry, triangle with
// infinity absorbing) plus non-expansiveness of every operation under the
// max of argument distances. Lists every violation found.
Verdict validate_algebra(const FiniteQuantitativeAlgebra& a);

// Term evaluation under an assignment; throws ValidationError for unbound
// variables or elements foreign to the carrier.
int evaluate_index(const FiniteQuantitativeAlgebra& a, const Assignment& assign, const Term& t);
std::string evaluate(const FiniteQuantitativeAlgebra& a, const Assignment& assign, const Term& t);

// Shared indexed-term evaluator used by anything that owns operation tables.
int eval_with_tables(const std::map<std::string, OpTable>& ops, std::size_t carrier_size,
                     const std::function<int(const std::string&)>& var_index, const Term& t);

// Compiles terms over a fixed variable list into an index program, so tight
// enumeration loops can evaluate them with nothing but table lookups. Bind to
// an algebra's tables, then run once per assignment of variable indices.
class TermProgram {
 public:
  TermProgram(const std::vector<Term>& roots, const std::vector<std::string>& vars);

  std::size_t slot_count() const { return slots_.size(); }
  std::size_t root(std::size_t k) const { return roots_[k]; }

  void bind(const std::map<std::string, OpTable>& ops, std::size_t carrier_size);
  // vals is resized to slot_count(); var_values[i] is the index assigned to
  // the i-th variable of the constructor's list.
  void run(const int* var_values, std::vector<int>& vals) const;

 private:
  struct Slot {
    int var = -1;
    std::string symbol;
    const OpTable* table = nullptr;
    std::vector<std::size_t> args;
  };
  std::vector<Slot> slots_;  // in dependency order: arguments precede users
  std::vector<std::size_t> roots_;
  std::size_t carrier_ = 0;
};

struct SatisfactionResult {
  bool holds = true;
  std::optional<Assignment> counterexample;
  std::string detail;
};

// Satisfaction of a conditional equation: every assignment of the variables
// occurring in it that meets all hypothesis bounds must meet the conclusion
// bound. Void carriers satisfy everything vacuously.
SatisfactionResult satisfies(const FiniteQuantitativeAlgebra& a, const ConditionalEquation& ce);
SatisfactionResult satisfies_theory(const FiniteQuantitativeAlgebra& a,
                                    const std::vector<ConditionalEquation>& axioms);

// A claimed homomorphism: total map between carriers, by element name.
struct HomomorphismWitness {
  FiniteQuantitativeAlgebra source;
  FiniteQuantitativeAlgebra target;
  std::map<std::string, std::string> map;
};

// Operation commutation plus non-expansiveness of the map itself.
Verdict is_homomorphism(const HomomorphismWitness& h);

bool is_surjective(const HomomorphismWitness& h);

// Every subset of the image smaller than c pulls back to a subset of the
// source with the same image and exactly the same pairwise distances.
// Any homomorphism is 1-reflexive; the property is antitone in c.
bool is_c_reflexive(const HomomorphismWitness& h, std::size_t c);

// Subalgebra of the target induced on the image of h.
FiniteQuantitativeAlgebra image_algebra(const HomomorphismWitness& h);

// Subalgebra of a induced on the given subset of element names. Throws if
// the subset is not closed under the operations.
FiniteQuantitativeAlgebra induced_subalgebra(const FiniteQuantitativeAlgebra& a,
                                             const std::vector<std::string>& elements);

// 0/1 distance table whose kernel is the given equivalence relation, which
// must be a congruence of the operations (metric of a is not consulted).
// Classes are element-name lists; throws ValidationError otherwise.
std::vector<ExtRational> congruence_to_pseudometric(
    const FiniteQuantitativeAlgebra& a, const std::vector<std::vector<std::string>>& classes);

struct Countermodel {
  FiniteQuantitativeAlgebra algebra;
  Assignment assignment;
};

// Exhaustive enumeration of valid algebras over the carrier names with
// distances drawn from the grid. The visitor returns false to stop.
void enumerate_algebras(const Signature& sig, const std::vector<std::string>& carrier,
                        const std::vector<ExtRational>& grid, const Budgets& budgets,
                        const std::function<bool(const FiniteQuantitativeAlgebra&)>& visit);

// Distance grid for countermodel search: all sums of the input bounds with
// multiplicity up to carrier_size^2, plus 0 and infinity.
std::vector<ExtRational> countermodel_grid(const std::vector<QuantitativeEquation>& hypotheses,
                                           const QuantitativeEquation& goal, int carrier_size);

// Searches carriers of size 1..max_carrier for a valid algebra and assignment
// meeting every hypothesis while breaking the goal. First hit in canonical
// enumeration order wins; nullopt means exhaustion relative to the grid.
std::optional<Countermodel> search_countermodel(const Signature& sig,
                                                const std::vector<QuantitativeEquation>& hypotheses,
                                                const QuantitativeEquation& goal, int max_carrier,
                                                const Budgets& budgets);

}  // namespace qaw

#endif
