// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/equation.hpp"

#include <algorithm>

#include "qaw/error.hpp"

namespace qaw {

QuantitativeEquation::QuantitativeEquation(Term l, Term r, Rational b)
    : left(std::move(l)), right(std::move(r)), bound(b) {
  if (bound.is_negative()) {
    throw ValidationError("negative bound in equation " + str());
  }
}

std::string QuantitativeEquation::str() const {
  return left.str() + " =[" + bound.str() + "] " + right.str();
}

int QuantitativeEquation::compare(const QuantitativeEquation& o) const {
  if (int c = left.compare(o.left)) return c;
  if (int c = right.compare(o.right)) return c;
  if (bound == o.bound) return 0;
  return bound < o.bound ? -1 : 1;
}

ConditionalEquation::ConditionalEquation(std::vector<QuantitativeEquation> hyps,
                                         QuantitativeEquation concl)
    : hypotheses(std::move(hyps)), conclusion(std::move(concl)) {
  std::sort(hypotheses.begin(), hypotheses.end());
  hypotheses.erase(std::unique(hypotheses.begin(), hypotheses.end(),
                               [](const QuantitativeEquation& a, const QuantitativeEquation& b) {
                                 return a == b;
                               }),
                   hypotheses.end());
}

std::string ConditionalEquation::str() const {
  std::string out = "[";
  bool first = true;
  for (const auto& h : hypotheses) {
    if (!first) out += " ; ";
    first = false;
    out += h.str();
  }
  out += "] |- " + conclusion.str();
  return out;
}

int ConditionalEquation::compare(const ConditionalEquation& o) const {
  if (hypotheses.size() != o.hypotheses.size()) {
    return hypotheses.size() < o.hypotheses.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (int c = hypotheses[i].compare(o.hypotheses[i])) return c;
  }
  return conclusion.compare(o.conclusion);
}

std::string basic_class_name(BasicClass c) {
  switch (c) {
    case BasicClass::Unconditional: return "unconditional";
    case BasicClass::FinitaryBasic: return "finitary-basic";
    case BasicClass::Basic: return "basic";
    case BasicClass::General: return "general";
  }
  return "general";
}

BasicClass classify(const ConditionalEquation& ce) {
  if (ce.hypotheses.empty()) return BasicClass::Unconditional;
  bool all_vars = std::all_of(ce.hypotheses.begin(), ce.hypotheses.end(),
                              [](const QuantitativeEquation& h) {
                                return h.left.is_variable() && h.right.is_variable();
                              });
  return all_vars ? BasicClass::FinitaryBasic : BasicClass::General;
}

bool is_c_basic(const ConditionalEquation& ce, std::size_t c) {
  if (ce.hypotheses.size() >= c) return false;
  BasicClass k = classify(ce);
  return k == BasicClass::Unconditional || k == BasicClass::FinitaryBasic;
}

std::vector<std::string> variables_of(const ConditionalEquation& ce) {
  std::set<std::string> vars;
  auto add = [&vars](const Term& t) {
    auto vs = variables_of(t);
    vars.insert(vs.begin(), vs.end());
  };
  for (const auto& h : ce.hypotheses) {
    add(h.left);
    add(h.right);
  }
  add(ce.conclusion.left);
  add(ce.conclusion.right);
  return std::vector<std::string>(vars.begin(), vars.end());
}

void validate_equation(const Signature& sig, const QuantitativeEquation& qe) {
  validate_term(sig, qe.left);
  validate_term(sig, qe.right);
}

void validate_equation(const Signature& sig, const ConditionalEquation& ce) {
  for (const auto& h : ce.hypotheses) validate_equation(sig, h);
  validate_equation(sig, ce.conclusion);
}

}  // namespace qaw
