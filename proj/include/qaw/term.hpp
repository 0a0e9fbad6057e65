// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_TERM_HPP
#define QAW_TERM_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qaw/budgets.hpp"

namespace qaw {

// Finite signature: operation symbols with arities plus a declared variable
// pool. Symbol names and variable names must be disjoint and duplicate-free,
// which lets a bare identifier in a term be resolved without context.
class Signature {
public:
  Signature() = default;
  Signature(std::map<std::string, int> symbols, std::vector<std::string> variables);

  const std::map<std::string, int>& symbols() const { return symbols_; }
  const std::vector<std::string>& variables() const { return variables_; }

  bool has_symbol(const std::string& name) const { return symbols_.count(name) != 0; }
  bool has_variable(const std::string& name) const;
  int arity(const std::string& symbol) const;  // throws if unknown

private:
  std::map<std::string, int> symbols_;
  std::vector<std::string> variables_;
};

// Immutable first-order term. Shared nodes make copies cheap; all the
// workbench's universes are small enough that nothing fancier is needed.
class Term {
public:
  // Placeholder variable "_"; real terms come from the factories. The name
  // is undeclarable, so a placeholder that leaks into use fails validation.
  Term();

  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  bool is_variable() const { return node_->is_var; }
  bool is_application() const { return !node_->is_var; }
  const std::string& head() const { return node_->head; }
  const std::vector<Term>& args() const { return node_->args; }

  // Variables and constants have depth 0; otherwise 1 + max over arguments.
  int depth() const { return node_->depth; }

  // Prefix form: variables bare, applications as f(a, b); constants bare.
  std::string str() const;

  // Total order: depth, then head name, then arguments lexicographically.
  int compare(const Term& o) const;
  bool operator==(const Term& o) const { return compare(o) == 0; }
  bool operator!=(const Term& o) const { return compare(o) != 0; }
  bool operator<(const Term& o) const { return compare(o) < 0; }

private:
  struct Node {
    bool is_var;
    std::string head;
    std::vector<Term> args;
    int depth;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Finite-domain variable substitution, identity elsewhere.
class Substitution {
public:
  Substitution() = default;
  explicit Substitution(std::map<std::string, Term> mapping) : map_(std::move(mapping)) {}

  const std::map<std::string, Term>& mapping() const { return map_; }
  std::string str() const;

  // Homomorphic extension to terms.
  Term operator()(const Term& t) const;

private:
  std::map<std::string, Term> map_;
};

// Checks that every symbol use in t matches the signature's arities and that
// every variable is declared. Throws ValidationError otherwise.
void validate_term(const Signature& sig, const Term& t);

// Substitution application with signature validation of the input term and of
// every image term in the substitution.
Term apply_substitution(const Signature& sig, const Substitution& sub, const Term& t);

std::set<std::string> variables_of(const Term& t);
std::set<Term> subterms(const Term& t);

// All terms of depth <= depth over the given variable subset, sorted by the
// term order and duplicate-free. Throws BudgetError past cap.
std::vector<Term> enumerate_terms(const Signature& sig,
                                  const std::vector<std::string>& vars, int depth,
                                  std::size_t cap);

}  // namespace qaw

#endif
