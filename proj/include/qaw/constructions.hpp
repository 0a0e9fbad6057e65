// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_CONSTRUCTIONS_HPP
#define QAW_CONSTRUCTIONS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qaw/algebra.hpp"
#include "qaw/budgets.hpp"
#include "qaw/term.hpp"

namespace qaw {

// Distance table over a term universe, as induced by an assignment or built
// by hand. Always kept symmetric with a zero diagonal by the producers; the
// validator checks the rest.
struct PseudometricTable {
  std::vector<Term> universe;  // sorted, duplicate-free
  std::vector<ExtRational> values;

  int index_of(const Term& t) const;
  const ExtRational& at(int i, int j) const;
  const ExtRational& at(const Term& s, const Term& t) const;
  bool same_as(const PseudometricTable& o) const;
};

// Zero diagonal, symmetry, triangle, and non-expansiveness restricted to
// operation applications whose arguments and result all lie in the universe.
Verdict validate_pseudometric(const Signature& sig, const PseudometricTable& p);

// Product with componentwise operations and the max distance. Element names
// are tuples "(a, b)" in lexicographic order, first factor most significant.
// The empty product is the one-point algebra with carrier "()".
FiniteQuantitativeAlgebra direct_product(const Signature& sig,
                                         const std::vector<FiniteQuantitativeAlgebra>& factors,
                                         const Budgets& budgets);

// Smallest subalgebra containing the seed elements; void when the seed is
// empty and the signature has no constants.
FiniteQuantitativeAlgebra generated_subalgebra(const FiniteQuantitativeAlgebra& a,
                                               const std::vector<std::string>& seed);

// d(assignment(s), assignment(t)) over the universe.
PseudometricTable pseudometric_from_assignment(const FiniteQuantitativeAlgebra& a,
                                               const Assignment& assign,
                                               const std::vector<Term>& universe);

// Quotient of the term universe by the kernel of p. Classes are named after
// their least representative. Operations act on representatives; every
// result must have a p-equivalent member inside the universe, otherwise the
// universe is not operation-closed at this depth and construction fails.
FiniteQuantitativeAlgebra quotient_by_pseudometric(const Signature& sig,
                                                   const PseudometricTable& p);

// Quotient of a carrier by the kernel of the matrix p (indexed like the
// carrier), with p's values as distances. The kernel must be a congruence.
FiniteQuantitativeAlgebra quotient_algebra_by_pseudometric(const FiniteQuantitativeAlgebra& a,
                                                           const std::vector<ExtRational>& p);

// sub's carrier is a subset of parent's with identical distances and
// operation results.
Verdict is_subalgebra_of(const FiniteQuantitativeAlgebra& sub,
                         const FiniteQuantitativeAlgebra& parent);

// Largest carrier size in the family, plus one.
std::size_t r_of_K(const std::vector<FiniteQuantitativeAlgebra>& family);

struct CanonicalComponent {
  std::size_t member_index;  // which algebra of the family the witness lives in
  Assignment assignment;     // representative assignment for this distance table
  PseudometricTable table;
  FiniteQuantitativeAlgebra algebra;  // image subalgebra generated by the assignment
};

// Product of term quotients over all assignment-induced distance tables,
// with duplicate tables merged. Components are realized as the image
// subalgebras that generate them; gamma embeds each universe term as the
// tuple of its componentwise values.
struct CanonicalModel {
  Signature sig;
  std::vector<std::string> vars;
  std::vector<Term> universe;
  std::vector<FiniteQuantitativeAlgebra> members;
  std::vector<std::pair<std::size_t, Assignment>> assignments;  // all, pre-merge
  std::vector<CanonicalComponent> components;
  FiniteQuantitativeAlgebra product;
  std::map<Term, std::string> gamma;

  // Distance between two embedded terms, the sup over all components.
  const ExtRational& embedded_distance(const Term& s, const Term& t) const;
};

CanonicalModel canonical_model(const Signature& sig,
                               const std::vector<FiniteQuantitativeAlgebra>& family,
                               const std::vector<std::string>& vars, int depth,
                               const Budgets& budgets);

// The projection of the canonical product onto the component carrying the
// same distance table as `assign`, renamed into `target` along the pairing
// of generators. Satisfies beta(gamma(x)) = assign(x) and is r(K)-reflexive.
HomomorphismWitness weak_universality_beta(const CanonicalModel& model,
                                           const FiniteQuantitativeAlgebra& target,
                                           const Assignment& assign);

// Restriction of a surjection f : B -> C to the preimage of a subalgebra
// A <= C; stays surjective and preserves c-reflexivity.
HomomorphismWitness pullback_restriction(const HomomorphismWitness& f,
                                         const FiniteQuantitativeAlgebra& sub_of_target);

// Componentwise map between direct products of the sources and targets.
HomomorphismWitness product_of_homomorphisms(const Signature& sig,
                                             const std::vector<HomomorphismWitness>& factors,
                                             const Budgets& budgets);

struct SubalgebraEmbedding {
  FiniteQuantitativeAlgebra sub;
  FiniteQuantitativeAlgebra parent;
};

// Product of componentwise subalgebras embedded in the product of parents.
SubalgebraEmbedding embed_product_of_subalgebras(
    const Signature& sig, const std::vector<FiniteQuantitativeAlgebra>& subs,
    const std::vector<FiniteQuantitativeAlgebra>& parents, const Budgets& budgets);

}  // namespace qaw

#endif
