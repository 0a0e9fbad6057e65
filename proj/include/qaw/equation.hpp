// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_EQUATION_HPP
#define QAW_EQUATION_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qaw/rational.hpp"
#include "qaw/term.hpp"

namespace qaw {

// Indexed equation "left =[bound] right": the two terms are claimed to lie
// within the given distance. Bounds are finite non-negative rationals; an
// equation cannot state an infinite distance.
struct QuantitativeEquation {
  Term left;
  Term right;
  Rational bound;

  QuantitativeEquation(Term l, Term r, Rational b);

  std::string str() const;
  int compare(const QuantitativeEquation& o) const;
  bool operator==(const QuantitativeEquation& o) const { return compare(o) == 0; }
  bool operator!=(const QuantitativeEquation& o) const { return compare(o) != 0; }
  bool operator<(const QuantitativeEquation& o) const { return compare(o) < 0; }
};

// Conditional equation "hypotheses |- conclusion". The hypothesis list is
// kept sorted and duplicate-free so equal sets compare equal.
struct ConditionalEquation {
  std::vector<QuantitativeEquation> hypotheses;
  QuantitativeEquation conclusion;

  ConditionalEquation(std::vector<QuantitativeEquation> hyps, QuantitativeEquation concl);

  std::string str() const;
  int compare(const ConditionalEquation& o) const;
  bool operator==(const ConditionalEquation& o) const { return compare(o) == 0; }
  bool operator<(const ConditionalEquation& o) const { return compare(o) < 0; }
};

// Hypothesis-shape classes, ordered from most to least specific.
enum class BasicClass { Unconditional, FinitaryBasic, Basic, General };

std::string basic_class_name(BasicClass c);

// Most specific class that applies: no hypotheses -> Unconditional; all
// hypotheses between bare variables -> FinitaryBasic (hypothesis lists here
// are always finite, which also makes them Basic); otherwise General.
BasicClass classify(const ConditionalEquation& ce);

// True when ce has fewer than c hypotheses, all between bare variables.
bool is_c_basic(const ConditionalEquation& ce, std::size_t c);

// Variables occurring anywhere in the conditional equation, sorted.
std::vector<std::string> variables_of(const ConditionalEquation& ce);

// Validates all terms against the signature.
void validate_equation(const Signature& sig, const QuantitativeEquation& qe);
void validate_equation(const Signature& sig, const ConditionalEquation& ce);

}  // namespace qaw

#endif
