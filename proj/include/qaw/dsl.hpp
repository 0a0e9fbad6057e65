// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_DSL_HPP
#define QAW_DSL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qaw/algebra.hpp"
#include "qaw/equation.hpp"
#include "qaw/qfo.hpp"
#include "qaw/term.hpp"

namespace qaw {

// Everything a source file can define. Object names are unique per kind.
struct Workspace {
  Signature sig;
  std::map<std::string, FiniteQuantitativeAlgebra> algebras;
  std::map<std::string, std::vector<ConditionalEquation>> theories;
  std::map<std::string, ThresholdStructure> structures;
  std::map<std::string, HornFormula> formulas;
};

// Parses a full source text. Shape errors (unknown names, missing distance
// pairs, partial operation tables) are reported with line and column;
// semantic properties like the metric axioms are left to the checking
// commands.
Workspace parse_workspace(const std::string& text);

// Parses "s =[e] t" or "[h1 ; h2] |- s =[e] t" against the signature.
ConditionalEquation parse_judgment(const Signature& sig, const std::string& text);

Term parse_term_text(const Signature& sig, const std::string& text);

HornFormula parse_formula_text(const Signature& sig, const std::string& text);

// Printers emit source the parser accepts, so parse(print(x)) == x for every
// object whose element names are plain identifiers.
std::string print_signature(const Signature& sig);
std::string print_algebra(const std::string& name, const FiniteQuantitativeAlgebra& a);
std::string print_theory(const std::string& name, const std::vector<ConditionalEquation>& axioms);
std::string print_structure(const std::string& name, const ThresholdStructure& m);
std::string print_formula(const std::string& name, const HornFormula& phi);
std::string print_workspace(const Workspace& ws);

// Synthesized carriers (products, quotients) use compound element names that
// the grammar cannot lex. This renames elements to e0, e1, .. and reports the
// correspondence so the result can be printed and reloaded.
struct RenamedAlgebra {
  FiniteQuantitativeAlgebra algebra;
  std::vector<std::pair<std::string, std::string>> manifest;  // new name, old name
};

RenamedAlgebra rename_carrier(const FiniteQuantitativeAlgebra& a);

struct RenamedStructure {
  ThresholdStructure structure;
  std::vector<std::pair<std::string, std::string>> manifest;  // new name, old name
};

RenamedStructure rename_carrier(const ThresholdStructure& m);

}  // namespace qaw

#endif
