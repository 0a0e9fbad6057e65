// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/term.hpp"

#include <algorithm>

#include "qaw/error.hpp"

namespace qaw {

Signature::Signature(std::map<std::string, int> symbols, std::vector<std::string> variables)
    : symbols_(std::move(symbols)), variables_(std::move(variables)) {
  std::set<std::string> seen;
  for (const auto& [name, ar] : symbols_) {
    if (name.empty()) throw ValidationError("empty symbol name");
    if (ar < 0) throw ValidationError("negative arity for symbol '" + name + "'");
    seen.insert(name);
  }
  for (const auto& v : variables_) {
    if (v.empty()) throw ValidationError("empty variable name");
    if (symbols_.count(v)) {
      throw ValidationError("name '" + v + "' used both as symbol and variable");
    }
    if (!seen.insert(v).second) {
      throw ValidationError("duplicate variable '" + v + "'");
    }
  }
}

bool Signature::has_variable(const std::string& name) const {
  return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
}

int Signature::arity(const std::string& symbol) const {
  auto it = symbols_.find(symbol);
  if (it == symbols_.end()) throw ValidationError("unknown symbol '" + symbol + "'");
  return it->second;
}

Term::Term() {
  static const auto placeholder = [] {
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->head = "_";
    n->depth = 0;
    return n;
  }();
  node_ = placeholder;
}

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->head = std::move(name);
  n->depth = 0;
  return Term(std::move(n));
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->head = std::move(symbol);
  int d = 0;
  for (const Term& a : args) d = std::max(d, a.depth() + 1);
  n->args = std::move(args);
  n->depth = d;
  return Term(std::move(n));
}

std::string Term::str() const {
  if (node_->is_var || node_->args.empty()) return node_->head;
  std::string out = node_->head;
  out += "(";
  bool first = true;
  for (const Term& a : node_->args) {
    if (!first) out += ", ";
    first = false;
    out += a.str();
  }
  out += ")";
  return out;
}

int Term::compare(const Term& o) const {
  if (node_ == o.node_) return 0;
  if (node_->depth != o.node_->depth) return node_->depth < o.node_->depth ? -1 : 1;
  if (int c = node_->head.compare(o.node_->head)) return c < 0 ? -1 : 1;
  if (node_->is_var != o.node_->is_var) return node_->is_var ? -1 : 1;
  if (node_->args.size() != o.node_->args.size()) {
    return node_->args.size() < o.node_->args.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (int c = node_->args[i].compare(o.node_->args[i])) return c;
  }
  return 0;
}

std::string Substitution::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : map_) {
    if (!first) out += ", ";
    first = false;
    out += v + " -> " + t.str();
  }
  out += "}";
  return out;
}

Term Substitution::operator()(const Term& t) const {
  if (t.is_variable()) {
    auto it = map_.find(t.head());
    return it == map_.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back((*this)(a));
  return Term::apply(t.head(), std::move(args));
}

void validate_term(const Signature& sig, const Term& t) {
  if (t.is_variable()) {
    if (!sig.has_variable(t.head())) {
      throw ValidationError("undeclared variable '" + t.head() + "'");
    }
    return;
  }
  if (!sig.has_symbol(t.head())) {
    throw ValidationError("unknown symbol '" + t.head() + "'");
  }
  int ar = sig.arity(t.head());
  if (static_cast<std::size_t>(ar) != t.args().size()) {
    throw ValidationError("symbol '" + t.head() + "' expects " + std::to_string(ar) +
                          " arguments, got " + std::to_string(t.args().size()));
  }
  for (const Term& a : t.args()) validate_term(sig, a);
}

Term apply_substitution(const Signature& sig, const Substitution& sub, const Term& t) {
  validate_term(sig, t);
  for (const auto& [v, image] : sub.mapping()) {
    if (!sig.has_variable(v)) {
      throw ValidationError("substitution domain has undeclared variable '" + v + "'");
    }
    validate_term(sig, image);
  }
  return sub(t);
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) {
    out.insert(t.head());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

void collect_subterms(const Term& t, std::set<Term>& out) {
  out.insert(t);
  for (const Term& a : t.args()) collect_subterms(a, out);
}

}  // namespace

std::set<std::string> variables_of(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<Term> subterms(const Term& t) {
  std::set<Term> out;
  collect_subterms(t, out);
  return out;
}

std::vector<Term> enumerate_terms(const Signature& sig,
                                  const std::vector<std::string>& vars, int depth,
                                  std::size_t cap) {
  for (const auto& v : vars) {
    if (!sig.has_variable(v)) {
      throw ValidationError("enumeration over undeclared variable '" + v + "'");
    }
  }
  std::set<Term> all;
  std::vector<std::string> sorted_vars = vars;
  std::sort(sorted_vars.begin(), sorted_vars.end());
  for (const auto& v : sorted_vars) all.insert(Term::variable(v));
  for (const auto& [name, ar] : sig.symbols()) {
    if (ar == 0) all.insert(Term::apply(name));
  }
  if (all.size() > cap) throw BudgetError("term enumeration exceeded cap");

  for (int d = 1; d <= depth; ++d) {
    std::vector<Term> base(all.begin(), all.end());
    for (const auto& [name, ar] : sig.symbols()) {
      if (ar == 0) continue;
      // Odometer over argument tuples drawn from every term built so far.
      std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
      while (true) {
        std::vector<Term> args;
        args.reserve(idx.size());
        for (std::size_t i : idx) args.push_back(base[i]);
        all.insert(Term::apply(name, std::move(args)));
        if (all.size() > cap) throw BudgetError("term enumeration exceeded cap");
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == base.size()) idx[--k] = 0;
        if (k == 0) break;
      }
    }
  }
  return std::vector<Term>(all.begin(), all.end());
}

}  // namespace qaw
