// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/commands.hpp"

#include <chrono>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qaw/algebra.hpp"
#include "qaw/constructions.hpp"
#include "qaw/derivation.hpp"
#include "qaw/error.hpp"
#include "qaw/qfo.hpp"
#include "qaw/suites.hpp"

namespace qaw {

namespace {

bool plain_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_spaces(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::uint64_t parse_count(const std::string& text, const std::string& what) {
  if (text.empty()) throw ValidationError(what + ": empty number");
  std::uint64_t value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ValidationError(what + ": '" + text + "' is not a nonnegative integer");
    }
    if (value > (~0ull - 9) / 10) throw ValidationError(what + ": '" + text + "' is out of range");
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

// Strips "{a b}" down to its words; accepts bare words too.
std::vector<std::string> parse_braced_list(std::string text, const std::string& what) {
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw ValidationError(what + ": unterminated '{' list");
    text = text.substr(1, text.size() - 2);
  }
  return split_spaces(text);
}

struct ParsedArgs {
  std::string command;
  std::vector<std::string> positionals;
  std::map<std::string, std::string> values;  // valued flags
  std::set<std::string> switches;             // boolean flags
  std::string store;                          // name after a standalone "->"

  bool has(const std::string& flag) const {
    return values.count(flag) != 0 || switches.count(flag) != 0;
  }
  std::string value(const std::string& flag, const std::string& fallback) const {
    auto it = values.find(flag);
    return it == values.end() ? fallback : it->second;
  }
};

const std::set<std::string> kValuedFlags = {
    "--depth", "--max-carrier", "--term-cap", "--carrier-cap", "--step-cap",
    "--seed",  "--vars",        "--c",        "--filter",
};
const std::set<std::string> kSwitchFlags = {"--json", "--timing", "--proof"};

ParsedArgs parse_args(const std::vector<std::string>& args) {
  if (args.empty()) throw ValidationError("no command given");
  ParsedArgs out;
  out.command = args[0];
  std::size_t i = 1;
  auto take_value = [&](const std::string& flag) {
    if (i >= args.size()) throw ValidationError("flag " + flag + " needs a value");
    std::string v = args[i++];
    // A braced value may arrive split across argv entries; glue it back.
    if (!v.empty() && v.front() == '{' && v.back() != '}') {
      while (i < args.size()) {
        v += " " + args[i];
        bool done = !args[i].empty() && args[i].back() == '}';
        ++i;
        if (done) break;
      }
    }
    return v;
  };
  while (i < args.size()) {
    const std::string& tok = args[i];
    if (tok.empty()) {
      ++i;
      continue;
    }
    if (tok == "->") {
      ++i;
      if (i >= args.size()) throw ValidationError("'->' needs a result name");
      out.store = args[i++];
      continue;
    }
    if (kValuedFlags.count(tok)) {
      ++i;
      out.values[tok] = take_value(tok);
      continue;
    }
    if (kSwitchFlags.count(tok)) {
      out.switches.insert(tok);
      ++i;
      continue;
    }
    if (tok.rfind("--", 0) == 0) throw ValidationError("unknown flag '" + tok + "'");
    if (tok.front() == '{' && tok.back() != '}') {
      ++i;
      std::string v = tok;
      while (i < args.size()) {
        v += " " + args[i];
        bool done = !args[i].empty() && args[i].back() == '}';
        ++i;
        if (done) break;
      }
      out.positionals.push_back(v);
      continue;
    }
    out.positionals.push_back(tok);
    ++i;
  }
  return out;
}

void env_budget(const char* name, const std::function<void(std::uint64_t)>& apply) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  apply(parse_count(raw, std::string("environment variable ") + name));
}

void apply_flag_budgets(const ParsedArgs& pa, Budgets& b) {
  if (pa.has("--depth")) b.depth = static_cast<int>(parse_count(pa.value("--depth", ""), "--depth"));
  if (pa.has("--max-carrier")) {
    b.max_carrier = static_cast<int>(parse_count(pa.value("--max-carrier", ""), "--max-carrier"));
  }
  if (pa.has("--term-cap")) {
    b.term_cap = static_cast<std::size_t>(parse_count(pa.value("--term-cap", ""), "--term-cap"));
  }
  if (pa.has("--carrier-cap")) {
    b.carrier_cap =
        static_cast<std::size_t>(parse_count(pa.value("--carrier-cap", ""), "--carrier-cap"));
  }
  if (pa.has("--step-cap")) b.step_cap = parse_count(pa.value("--step-cap", ""), "--step-cap");
  if (pa.has("--seed")) b.seed = parse_count(pa.value("--seed", ""), "--seed");
}

std::string budget_line(const Budgets& b) {
  std::ostringstream out;
  out << "depth=" << b.depth << " max-carrier=" << b.max_carrier << " term-cap=" << b.term_cap
      << " carrier-cap=" << b.carrier_cap << " step-cap=" << b.step_cap << " seed=" << b.seed;
  return out.str();
}

const FiniteQuantitativeAlgebra& need_algebra(const Workspace& ws, const std::string& name) {
  auto it = ws.algebras.find(name);
  if (it == ws.algebras.end()) throw ValidationError("unknown algebra '" + name + "'");
  return it->second;
}

const std::vector<ConditionalEquation>& need_theory(const Workspace& ws, const std::string& name) {
  auto it = ws.theories.find(name);
  if (it == ws.theories.end()) throw ValidationError("unknown theory '" + name + "'");
  return it->second;
}

const ThresholdStructure& need_structure(const Workspace& ws, const std::string& name) {
  auto it = ws.structures.find(name);
  if (it == ws.structures.end()) throw ValidationError("unknown structure '" + name + "'");
  return it->second;
}

const HornFormula& need_formula(const Workspace& ws, const std::string& name) {
  auto it = ws.formulas.find(name);
  if (it == ws.formulas.end()) throw ValidationError("unknown formula '" + name + "'");
  return it->second;
}

const FiniteQuantitativeAlgebra& need_valid_algebra(const Workspace& ws, const std::string& name) {
  const FiniteQuantitativeAlgebra& a = need_algebra(ws, name);
  Verdict v = validate_algebra(a);
  if (!v) {
    throw ValidationError("algebra '" + name + "' is not a valid quantitative algebra: " +
                          v.issues.front());
  }
  return a;
}

std::string require_store_name(const ParsedArgs& pa) {
  if (pa.store.empty()) return "Result";
  if (!plain_ident(pa.store)) {
    throw ValidationError("result name '" + pa.store + "' is not an identifier");
  }
  return pa.store;
}

std::string manifest_text(const std::vector<std::pair<std::string, std::string>>& manifest) {
  std::string out;
  for (const auto& [fresh, old] : manifest) {
    if (!out.empty()) out += "\n";
    out += fresh + " = " + old;
  }
  return out;
}

// Renames compound carriers to e0, e1, .. so the result prints and reloads;
// stores under pa.store when given. Returns the definition text.
void deliver_algebra(Workspace& ws, Report& rep, const ParsedArgs& pa,
                     const FiniteQuantitativeAlgebra& a) {
  std::string name = require_store_name(pa);
  bool needs_rename = false;
  for (const std::string& e : a.carrier()) {
    if (!plain_ident(e)) needs_rename = true;
  }
  FiniteQuantitativeAlgebra out = a;
  if (needs_rename) {
    RenamedAlgebra ra = rename_carrier(a);
    out = ra.algebra;
    rep.add("carrier-manifest", manifest_text(ra.manifest));
  }
  if (!pa.store.empty()) {
    ws.algebras[name] = out;
    rep.add("stored", name);
  }
  rep.add("definition", print_algebra(name, out));
}

void deliver_structure(Workspace& ws, Report& rep, const ParsedArgs& pa,
                       const ThresholdStructure& m) {
  std::string name = require_store_name(pa);
  bool needs_rename = false;
  for (const std::string& e : m.carrier()) {
    if (!plain_ident(e)) needs_rename = true;
  }
  ThresholdStructure out = m;
  if (needs_rename) {
    RenamedStructure rm = rename_carrier(m);
    out = rm.structure;
    rep.add("carrier-manifest", manifest_text(rm.manifest));
  }
  if (!pa.store.empty()) {
    ws.structures[name] = out;
    rep.add("stored", name);
  }
  rep.add("definition", print_structure(name, out));
}

void require_positionals(const ParsedArgs& pa, std::size_t count, const std::string& usage) {
  if (pa.positionals.size() != count) {
    throw ValidationError("usage: " + usage);
  }
}

void cmd_check_algebra(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  require_positionals(pa, 1, "check-algebra <algebra>");
  const FiniteQuantitativeAlgebra& a = need_algebra(ws, pa.positionals[0]);
  Verdict v = validate_algebra(a);
  rep.add("algebra", pa.positionals[0]);
  rep.add("carrier-size", static_cast<long long>(a.size()));
  rep.add("verdict", v ? "valid" : "invalid");
  if (!v) {
    rep.add("issues", v.summary());
    rep.status = ReportStatus::CheckFailed;
  }
}

void cmd_check_sat(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  require_positionals(pa, 2, "check-sat <algebra> <theory>");
  const FiniteQuantitativeAlgebra& a = need_valid_algebra(ws, pa.positionals[0]);
  const auto& axioms = need_theory(ws, pa.positionals[1]);
  rep.add("algebra", pa.positionals[0]);
  rep.add("theory", pa.positionals[1]);
  rep.add("axioms", static_cast<long long>(axioms.size()));
  std::size_t failures = 0;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    SatisfactionResult sr = satisfies(a, axioms[i]);
    std::string key = "axiom-" + std::to_string(i);
    if (sr.holds) {
      rep.add(key, "holds: " + axioms[i].str());
    } else {
      ++failures;
      rep.add(key, "fails: " + axioms[i].str() + " at " + assignment_str(*sr.counterexample));
    }
  }
  rep.add("verdict", failures == 0 ? "satisfied" : std::to_string(failures) + " axioms fail");
  if (failures > 0) rep.status = ReportStatus::CheckFailed;
}

void cmd_derive(Workspace& ws, const ParsedArgs& pa, const Budgets& b, Report& rep) {
  if (pa.positionals.size() < 2) {
    throw ValidationError("usage: derive <theory> \"[hyps] |- s =[e] t\" [--depth d] [--proof]");
  }
  const auto& axioms = need_theory(ws, pa.positionals[0]);
  std::vector<std::string> rest(pa.positionals.begin() + 1, pa.positionals.end());
  ConditionalEquation goal = parse_judgment(ws.sig, join(rest, " "));
  rep.add("theory", pa.positionals[0]);
  rep.add("judgment", goal.str());
  std::vector<Term> universe = build_universe(ws.sig, goal.hypotheses, goal.conclusion, axioms, b);
  bool want_proof = pa.has("--proof");
  SaturationResult sat =
      least_derivable_distance(ws.sig, goal.hypotheses, axioms, universe, b, want_proof);
  const ExtRational& least = sat.table.bound(goal.conclusion.left, goal.conclusion.right);
  rep.add("universe-size", static_cast<long long>(universe.size()));
  rep.add("least-bound", least.str());
  rep.add("requested-bound", goal.conclusion.bound.str());
  bool derivable = least <= ExtRational(goal.conclusion.bound);
  rep.add("derivable", derivable ? "yes" : "no");
  if (derivable && want_proof) {
    ProofObject proof =
        sat.proof_for(goal.conclusion.left, goal.conclusion.right, goal.conclusion.bound);
    ProofCheckResult pc = check_proof(proof, axioms);
    rep.add("proof", proof.str());
    rep.add("proof-check",
            pc.ok ? "ok, " + std::to_string(proof.steps.size()) + " steps" : pc.reason);
  }
  if (!derivable) rep.status = ReportStatus::CheckFailed;
}

void cmd_countermodel(Workspace& ws, const ParsedArgs& pa, const Budgets& b, Report& rep) {
  if (pa.positionals.empty()) {
    throw ValidationError("usage: countermodel \"[hyps] |- s =[e] t\" [--max-carrier n]");
  }
  ConditionalEquation goal = parse_judgment(ws.sig, join(pa.positionals, " "));
  rep.add("judgment", goal.str());
  rep.add("max-carrier", static_cast<long long>(b.max_carrier));
  std::optional<Countermodel> cm =
      search_countermodel(ws.sig, goal.hypotheses, goal.conclusion, b.max_carrier, b);
  if (!cm.has_value()) {
    rep.add("found", "no");
    rep.status = ReportStatus::CheckFailed;
    return;
  }
  rep.add("found", "yes");
  rep.add("assignment", assignment_str(cm->assignment));
  rep.add("algebra", print_algebra("Counter", cm->algebra));
}

void cmd_product(Workspace& ws, const ParsedArgs& pa, const Budgets& b, Report& rep) {
  std::vector<FiniteQuantitativeAlgebra> factors;
  for (const std::string& name : pa.positionals) {
    factors.push_back(need_valid_algebra(ws, name));
  }
  rep.add("factors", join(pa.positionals, " "));
  FiniteQuantitativeAlgebra prod = direct_product(ws.sig, factors, b);
  rep.add("carrier-size", static_cast<long long>(prod.size()));
  deliver_algebra(ws, rep, pa, prod);
}

void cmd_subalgebra(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  require_positionals(pa, 2, "subalgebra <algebra> {seed elements} [-> Name]");
  const FiniteQuantitativeAlgebra& a = need_valid_algebra(ws, pa.positionals[0]);
  std::vector<std::string> seed = parse_braced_list(pa.positionals[1], "seed");
  rep.add("algebra", pa.positionals[0]);
  rep.add("seed", "{" + join(seed, " ") + "}");
  FiniteQuantitativeAlgebra sub = generated_subalgebra(a, seed);
  rep.add("carrier-size", static_cast<long long>(sub.size()));
  deliver_algebra(ws, rep, pa, sub);
}

void cmd_canonical_model(Workspace& ws, const ParsedArgs& pa, const Budgets& b, Report& rep) {
  if (pa.positionals.empty()) {
    throw ValidationError("usage: canonical-model <algebra>... --vars n --depth d [-> Name]");
  }
  std::vector<FiniteQuantitativeAlgebra> family;
  for (const std::string& name : pa.positionals) {
    family.push_back(need_valid_algebra(ws, name));
  }
  std::size_t var_count = pa.has("--vars")
                              ? static_cast<std::size_t>(parse_count(pa.value("--vars", ""), "--vars"))
                              : 2;
  const std::vector<std::string>& declared = ws.sig.variables();
  if (var_count > declared.size()) {
    throw ValidationError("--vars " + std::to_string(var_count) + " exceeds the " +
                          std::to_string(declared.size()) + " declared variables");
  }
  std::vector<std::string> vars(declared.begin(), declared.begin() + static_cast<long>(var_count));
  rep.add("members", join(pa.positionals, " "));
  rep.add("vars", join(vars, " "));
  rep.add("depth", static_cast<long long>(b.depth));
  CanonicalModel model = canonical_model(ws.sig, family, vars, b.depth, b);
  rep.add("universe-size", static_cast<long long>(model.universe.size()));
  rep.add("assignments", static_cast<long long>(model.assignments.size()));
  rep.add("components", static_cast<long long>(model.components.size()));
  std::string comp_lines;
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    const CanonicalComponent& c = model.components[i];
    if (!comp_lines.empty()) comp_lines += "\n";
    comp_lines += "component " + std::to_string(i) + ": member " +
                  pa.positionals[c.member_index] + ", size " + std::to_string(c.algebra.size()) +
                  ", assignment " + assignment_str(c.assignment);
  }
  rep.add("component-manifest", comp_lines);
  std::string gamma_lines;
  for (const auto& [term, element] : model.gamma) {
    if (!gamma_lines.empty()) gamma_lines += "\n";
    gamma_lines += term.str() + " -> " + element;
  }
  rep.add("gamma", gamma_lines);
  rep.add("reflexivity-rank", static_cast<long long>(r_of_K(family)));
  rep.add("carrier-size", static_cast<long long>(model.product.size()));
  deliver_algebra(ws, rep, pa, model.product);
}

std::map<std::string, std::string> parse_map_pairs(const std::vector<std::string>& tokens) {
  std::map<std::string, std::string> out;
  for (const std::string& tok : tokens) {
    std::size_t arrow = tok.find("->");
    if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= tok.size()) {
      throw ValidationError("map entry '" + tok + "' is not of the form element->element");
    }
    std::string from = tok.substr(0, arrow);
    std::string to = tok.substr(arrow + 2);
    if (out.count(from)) throw ValidationError("map entry for '" + from + "' given twice");
    out[from] = to;
  }
  return out;
}

HomomorphismWitness witness_from_args(Workspace& ws, const ParsedArgs& pa,
                                      const std::string& usage, Report& rep) {
  if (pa.positionals.size() < 2) throw ValidationError("usage: " + usage);
  HomomorphismWitness h;
  h.source = need_valid_algebra(ws, pa.positionals[0]);
  h.target = need_valid_algebra(ws, pa.positionals[1]);
  std::vector<std::string> pairs(pa.positionals.begin() + 2, pa.positionals.end());
  h.map = parse_map_pairs(pairs);
  rep.add("source", pa.positionals[0]);
  rep.add("target", pa.positionals[1]);
  return h;
}

void cmd_check_hom(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  HomomorphismWitness h =
      witness_from_args(ws, pa, "check-hom <source> <target> <a->x> ...", rep);
  Verdict v = is_homomorphism(h);
  rep.add("verdict", v ? "homomorphism" : "not a homomorphism");
  if (!v) {
    rep.add("issues", v.summary());
    rep.status = ReportStatus::CheckFailed;
    return;
  }
  rep.add("surjective", is_surjective(h) ? "yes" : "no");
}

void cmd_check_reflexive(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  HomomorphismWitness h =
      witness_from_args(ws, pa, "check-reflexive <source> <target> <a->x> ... --c k", rep);
  std::size_t c =
      pa.has("--c") ? static_cast<std::size_t>(parse_count(pa.value("--c", ""), "--c")) : 1;
  rep.add("c", static_cast<long long>(c));
  Verdict v = is_homomorphism(h);
  if (!v) {
    rep.add("verdict", "not a homomorphism");
    rep.add("issues", v.summary());
    rep.status = ReportStatus::CheckFailed;
    return;
  }
  bool refl = is_c_reflexive(h, c);
  rep.add("verdict", refl ? "c-reflexive" : "not c-reflexive");
  if (!refl) rep.status = ReportStatus::CheckFailed;
}

void cmd_to_qfo(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  require_positionals(pa, 1, "to-qfo <algebra> [-> Name]");
  const FiniteQuantitativeAlgebra& a = need_valid_algebra(ws, pa.positionals[0]);
  rep.add("algebra", pa.positionals[0]);
  ThresholdStructure m = to_qfo(a);
  QfoAxiomReport ax = check_qfo_axioms(m);
  rep.add("axioms", ax.summary());
  deliver_structure(ws, rep, pa, m);
}

void cmd_to_algebra(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  require_positionals(pa, 1, "to-algebra <structure> [-> Name]");
  const ThresholdStructure& m = need_structure(ws, pa.positionals[0]);
  rep.add("structure", pa.positionals[0]);
  FiniteQuantitativeAlgebra a = to_algebra(m);
  deliver_algebra(ws, rep, pa, a);
}

void cmd_reduced_product(Workspace& ws, const ParsedArgs& pa, const Budgets& b, Report& rep) {
  if (pa.positionals.empty()) {
    throw ValidationError("usage: reduced-product <structure>... --filter {indices} [-> Name]");
  }
  std::vector<ThresholdStructure> ms;
  for (const std::string& name : pa.positionals) ms.push_back(need_structure(ws, name));
  FilterSpec filter;
  filter.index_count = ms.size();
  if (pa.has("--filter")) {
    for (const std::string& word : parse_braced_list(pa.value("--filter", ""), "--filter")) {
      filter.generator.push_back(static_cast<std::size_t>(parse_count(word, "--filter index")));
    }
  } else {
    for (std::size_t i = 0; i < ms.size(); ++i) filter.generator.push_back(i);
  }
  rep.add("structures", join(pa.positionals, " "));
  rep.add("filter", filter.str());
  ThresholdStructure r = reduced_product(ms, filter, b);
  rep.add("carrier-size", static_cast<long long>(r.size()));
  QfoAxiomReport ax = check_qfo_axioms(r);
  rep.add("axioms", ax.summary());
  deliver_structure(ws, rep, pa, r);
}

void cmd_eval_horn(Workspace& ws, const ParsedArgs& pa, const Budgets&, Report& rep) {
  require_positionals(pa, 2, "eval-horn <structure> <formula>");
  const ThresholdStructure& m = need_structure(ws, pa.positionals[0]);
  const HornFormula& phi = need_formula(ws, pa.positionals[1]);
  rep.add("structure", pa.positionals[0]);
  rep.add("formula", phi.str());
  HornResult hr = eval_horn(m, phi);
  rep.add("holds", hr.holds ? "yes" : "no");
  if (!hr.holds) {
    if (hr.counterexample.has_value()) {
      rep.add("counterexample", assignment_str(*hr.counterexample));
    }
    if (!hr.detail.empty()) rep.add("detail", hr.detail);
    rep.status = ReportStatus::CheckFailed;
  }
}

void cmd_check_consistent(Workspace& ws, const ParsedArgs& pa, const Budgets& b, Report& rep) {
  require_positionals(pa, 1, "check-consistent <theory> [--depth d]");
  const auto& axioms = need_theory(ws, pa.positionals[0]);
  const std::vector<std::string>& vars = ws.sig.variables();
  if (vars.size() < 2) {
    throw ValidationError("consistency probe needs two declared variables");
  }
  rep.add("theory", pa.positionals[0]);
  rep.add("probe-variables", vars[0] + " " + vars[1]);
  bool consistent = is_consistent_probe(ws.sig, axioms, vars[0], vars[1], b);
  rep.add("verdict", consistent ? "consistent" : "inconsistent at this depth");
  if (!consistent) rep.status = ReportStatus::CheckFailed;
}

void cmd_suite(const ParsedArgs& pa, const Budgets& b, Report& rep) {
  require_positionals(pa, 1, "suite <name>");
  SuiteResult sr = run_suite(pa.positionals[0], b);
  rep.add("suite", sr.name);
  for (const auto& [key, value] : sr.lines) rep.add(key, value);
  rep.add("verdict", sr.pass ? "all checks pass" : "checks failed");
  if (!sr.pass) rep.status = ReportStatus::CheckFailed;
}

}  // namespace

Budgets budgets_from_environment() {
  Budgets b;
  env_budget("QAW_DEPTH", [&](std::uint64_t v) { b.depth = static_cast<int>(v); });
  env_budget("QAW_MAX_CARRIER", [&](std::uint64_t v) { b.max_carrier = static_cast<int>(v); });
  env_budget("QAW_TERM_CAP", [&](std::uint64_t v) { b.term_cap = static_cast<std::size_t>(v); });
  env_budget("QAW_CARRIER_CAP",
             [&](std::uint64_t v) { b.carrier_cap = static_cast<std::size_t>(v); });
  env_budget("QAW_STEP_CAP", [&](std::uint64_t v) { b.step_cap = v; });
  env_budget("QAW_SEED", [&](std::uint64_t v) { b.seed = v; });
  return b;
}

Report run_command(Workspace& ws, const std::vector<std::string>& args) {
  Report rep;
  auto started = std::chrono::steady_clock::now();
  bool want_timing = false;
  try {
    ParsedArgs pa = parse_args(args);
    rep.command = pa.command;
    want_timing = pa.has("--timing");
    Budgets b = budgets_from_environment();
    apply_flag_budgets(pa, b);
    rep.add("inputs", hex64(fnv1a64(print_workspace(ws) + "\n" + join(args, " "))));
    if (pa.command == "check-algebra") {
      cmd_check_algebra(ws, pa, b, rep);
    } else if (pa.command == "check-sat") {
      cmd_check_sat(ws, pa, b, rep);
    } else if (pa.command == "derive") {
      cmd_derive(ws, pa, b, rep);
    } else if (pa.command == "countermodel") {
      cmd_countermodel(ws, pa, b, rep);
    } else if (pa.command == "product") {
      cmd_product(ws, pa, b, rep);
    } else if (pa.command == "subalgebra") {
      cmd_subalgebra(ws, pa, b, rep);
    } else if (pa.command == "canonical-model") {
      cmd_canonical_model(ws, pa, b, rep);
    } else if (pa.command == "check-hom") {
      cmd_check_hom(ws, pa, b, rep);
    } else if (pa.command == "check-reflexive") {
      cmd_check_reflexive(ws, pa, b, rep);
    } else if (pa.command == "to-qfo") {
      cmd_to_qfo(ws, pa, b, rep);
    } else if (pa.command == "to-algebra") {
      cmd_to_algebra(ws, pa, b, rep);
    } else if (pa.command == "reduced-product") {
      cmd_reduced_product(ws, pa, b, rep);
    } else if (pa.command == "eval-horn") {
      cmd_eval_horn(ws, pa, b, rep);
    } else if (pa.command == "check-consistent") {
      cmd_check_consistent(ws, pa, b, rep);
    } else if (pa.command == "suite") {
      cmd_suite(pa, b, rep);
    } else {
      throw ValidationError("unknown command '" + pa.command + "'");
    }
    rep.add("budgets", budget_line(b));
  } catch (const BudgetError& e) {
    rep.status = ReportStatus::BudgetExceeded;
    rep.add("error", e.what());
  } catch (const ValidationError& e) {
    rep.status = ReportStatus::InvalidInput;
    rep.add("error", e.what());
  }
  if (want_timing) {
    auto elapsed = std::chrono::steady_clock::now() - started;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    rep.add("timing", std::to_string(ms) + " ms");
  }
  return rep;
}

}  // namespace qaw
