// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/dsl.hpp"

#include <algorithm>
#include <set>

#include "qaw/error.hpp"

namespace qaw {

namespace {

struct Token {
  enum Kind { Ident, Int, Punct, End } kind = End;
  std::string text;
  int line = 0;
  int col = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                        msg);
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto step = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') step(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      step(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.kind = Token::Ident;
      t.text = text.substr(i, j - i);
      step(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Token::Int;
      t.text = text.substr(i, j - i);
      step(j - i);
    } else {
      t.kind = Token::Punct;
      auto two = text.substr(i, 2);
      if (two == "==" || two == "|-" || two == "->") {
        t.text = two;
        step(2);
      } else if (std::string("{}()[];,./=:&").find(c) != std::string::npos) {
        t.text = std::string(1, c);
        step(1);
      } else {
        fail_at(line, col, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// Recursive-descent parser over the token stream. Every error carries the
// position of the offending token.
class Parser {
public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Workspace parse_workspace_toplevel() {
    Workspace ws;
    bool objects_started = false;
    while (!at_end()) {
      Token kw = expect_ident("a block keyword");
      if (kw.text == "signature" || kw.text == "vars") {
        if (objects_started) {
          fail_at(kw.line, kw.col, kw.text + " block must precede object definitions");
        }
        if (kw.text == "signature") parse_signature_block();
        else parse_vars_block();
        continue;
      }
      objects_started = true;
      finalize_signature();
      if (kw.text == "algebra") parse_algebra_block(ws);
      else if (kw.text == "theory") parse_theory_block(ws);
      else if (kw.text == "structure") parse_structure_block(ws);
      else if (kw.text == "formula") parse_formula_block(ws);
      else fail_at(kw.line, kw.col, "unknown block keyword '" + kw.text + "'");
    }
    finalize_signature();
    ws.sig = sig_;
    return ws;
  }

  ConditionalEquation parse_judgment_only(const Signature& sig) {
    adopt(sig);
    ConditionalEquation ce = parse_judgment();
    expect_end();
    return ce;
  }

  Term parse_term_only(const Signature& sig) {
    adopt(sig);
    Term t = parse_term();
    expect_end();
    return t;
  }

  HornFormula parse_formula_only(const Signature& sig) {
    adopt(sig);
    HornFormula phi = parse_formula();
    expect_end();
    return phi;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  std::map<std::string, int> symbols_;
  std::vector<std::string> vars_;
  std::map<std::string, Token> declared_;  // first definition site of each name
  bool sig_built_ = false;
  Signature sig_;

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::End; }
  Token take() { return toks_[pos_++]; }

  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Punct && peek().text == p;
  }

  void expect_punct(const std::string& p, const std::string& where) {
    if (!at_punct(p)) {
      fail_at(peek().line, peek().col,
              "expected '" + p + "' " + where + ", found " + describe(peek()));
    }
    ++pos_;
  }

  Token expect_ident(const std::string& what) {
    if (peek().kind != Token::Ident) {
      fail_at(peek().line, peek().col, "expected " + what + ", found " + describe(peek()));
    }
    return take();
  }

  void expect_end() {
    if (!at_end()) {
      fail_at(peek().line, peek().col, "trailing input: " + describe(peek()));
    }
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Ident: return "identifier '" + t.text + "'";
      case Token::Int: return "number '" + t.text + "'";
      case Token::Punct: return "'" + t.text + "'";
      case Token::End: return "end of input";
    }
    return "token";
  }

  void adopt(const Signature& sig) {
    sig_ = sig;
    sig_built_ = true;
  }

  void finalize_signature() {
    if (sig_built_) return;
    sig_ = Signature(symbols_, vars_);
    sig_built_ = true;
  }

  void declare(const Token& name) {
    auto prior = declared_.find(name.text);
    if (prior != declared_.end()) {
      fail_at(name.line, name.col,
              "'" + name.text + "' already declared at line " +
                  std::to_string(prior->second.line));
    }
    declared_.emplace(name.text, name);
  }

  void parse_signature_block() {
    expect_punct("{", "to open the signature block");
    while (!at_punct("}")) {
      Token name = expect_ident("an operation name");
      declare(name);
      expect_punct("/", "between operation name and arity");
      if (peek().kind != Token::Int) {
        fail_at(peek().line, peek().col, "expected an arity, found " + describe(peek()));
      }
      Token ar = take();
      if (ar.text.size() > 2) fail_at(ar.line, ar.col, "arity out of range");
      symbols_[name.text] = static_cast<int>(std::stol(ar.text));
      if (at_punct(";")) ++pos_;
    }
    expect_punct("}", "to close the signature block");
  }

  void parse_vars_block() {
    expect_punct("{", "to open the vars block");
    while (!at_punct("}")) {
      Token name = expect_ident("a variable name");
      declare(name);
      vars_.push_back(name.text);
      if (at_punct(";")) ++pos_;
    }
    expect_punct("}", "to close the vars block");
  }

  Rational parse_rational() {
    if (peek().kind != Token::Int) {
      fail_at(peek().line, peek().col, "expected a rational, found " + describe(peek()));
    }
    Token num = take();
    if (num.text.size() > 18) fail_at(num.line, num.col, "number out of range");
    std::int64_t n = std::stoll(num.text);
    if (at_punct("/")) {
      ++pos_;
      if (peek().kind != Token::Int) {
        fail_at(peek().line, peek().col, "expected a denominator, found " + describe(peek()));
      }
      Token den = take();
      if (den.text.size() > 18) fail_at(den.line, den.col, "number out of range");
      std::int64_t d = std::stoll(den.text);
      if (d == 0) fail_at(den.line, den.col, "zero denominator");
      return Rational(n, d);
    }
    return Rational(n);
  }

  ExtRational parse_ext_rational() {
    if (peek().kind == Token::Ident && peek().text == "inf") {
      ++pos_;
      return ExtRational::infinity();
    }
    return ExtRational(parse_rational());
  }

  Term parse_term() {
    Token id = expect_ident("a term");
    if (at_punct("(")) {
      ++pos_;
      std::vector<Term> args;
      if (!at_punct(")")) {
        args.push_back(parse_term());
        while (at_punct(",")) {
          ++pos_;
          args.push_back(parse_term());
        }
      }
      expect_punct(")", "to close the argument list");
      if (!sig_.has_symbol(id.text)) {
        fail_at(id.line, id.col, "unknown operation '" + id.text + "'");
      }
      int want = sig_.arity(id.text);
      if (static_cast<std::size_t>(want) != args.size()) {
        fail_at(id.line, id.col,
                "operation '" + id.text + "' expects " + std::to_string(want) +
                    " arguments, got " + std::to_string(args.size()));
      }
      return Term::apply(id.text, std::move(args));
    }
    if (sig_.has_variable(id.text)) return Term::variable(id.text);
    if (sig_.has_symbol(id.text)) {
      if (sig_.arity(id.text) == 0) return Term::apply(id.text);
      fail_at(id.line, id.col,
              "operation '" + id.text + "' of arity " + std::to_string(sig_.arity(id.text)) +
                  " needs arguments");
    }
    fail_at(id.line, id.col, "unknown identifier '" + id.text + "'");
  }

  QuantitativeEquation parse_equation() {
    Token start = peek();
    Term left = parse_term();
    expect_punct("=", "in an equation");
    expect_punct("[", "before the bound");
    Rational bound = parse_rational();
    expect_punct("]", "after the bound");
    Term right = parse_term();
    (void)start;
    return QuantitativeEquation(std::move(left), std::move(right), bound);
  }

  ConditionalEquation parse_judgment() {
    std::vector<QuantitativeEquation> hyps;
    if (at_punct("[")) {
      ++pos_;
      if (!at_punct("]")) {
        hyps.push_back(parse_equation());
        while (at_punct(";")) {
          ++pos_;
          hyps.push_back(parse_equation());
        }
      }
      expect_punct("]", "to close the hypothesis list");
      expect_punct("|-", "between hypotheses and conclusion");
      QuantitativeEquation concl = parse_equation();
      return ConditionalEquation(std::move(hyps), std::move(concl));
    }
    QuantitativeEquation concl = parse_equation();
    return ConditionalEquation({}, std::move(concl));
  }

  HornAtom parse_atom() {
    Term left = parse_term();
    if (at_punct("==")) {
      ++pos_;
      Term right = parse_term();
      return HornAtom::equality(std::move(left), std::move(right));
    }
    expect_punct("=", "in an atom");
    expect_punct("[", "before the bound");
    Rational bound = parse_rational();
    expect_punct("]", "after the bound");
    Term right = parse_term();
    return HornAtom::threshold(std::move(left), std::move(right), bound);
  }

  HornFormula parse_formula() {
    Token kw = expect_ident("'forall'");
    if (kw.text != "forall") fail_at(kw.line, kw.col, "expected 'forall'");
    HornFormula phi;
    std::set<std::string> quantified;
    while (!at_punct(".")) {
      Token v = expect_ident("a quantified variable");
      if (!sig_.has_variable(v.text)) {
        fail_at(v.line, v.col, "quantified variable '" + v.text + "' not declared in vars");
      }
      if (!quantified.insert(v.text).second) {
        fail_at(v.line, v.col, "variable '" + v.text + "' quantified twice");
      }
      phi.vars.push_back(v.text);
    }
    expect_punct(".", "after the quantifier prefix");
    Token body_open = peek();
    expect_punct("(", "to open the body conjunction");
    if (!at_punct(")")) {
      phi.body.push_back(parse_atom());
      while (at_punct("&")) {
        ++pos_;
        phi.body.push_back(parse_atom());
      }
    }
    expect_punct(")", "to close the body conjunction");
    expect_punct("->", "between body and head");
    bool wrapped = at_punct("(");
    if (wrapped) ++pos_;
    phi.head = parse_atom();
    if (wrapped) expect_punct(")", "to close the head");

    auto check_atom = [&](const HornAtom& a) {
      for (const auto& t : {a.left, a.right}) {
        for (const auto& v : variables_of(t)) {
          if (!quantified.count(v)) {
            fail_at(body_open.line, body_open.col,
                    "unbound variable '" + v + "' in atom " + a.str());
          }
        }
      }
    };
    for (const auto& a : phi.body) check_atom(a);
    check_atom(phi.head);
    return phi;
  }

  // Shared element-list parser for carrier statements.
  std::vector<std::string> parse_carrier_list() {
    expect_punct("{", "to open the carrier list");
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (!at_punct("}")) {
      Token e = expect_ident("a carrier element");
      if (!seen.insert(e.text).second) {
        fail_at(e.line, e.col, "carrier element '" + e.text + "' listed twice");
      }
      names.push_back(e.text);
    }
    expect_punct("}", "to close the carrier list");
    return names;
  }

  struct OpLines {
    int arity = 0;
    std::map<std::vector<int>, std::pair<int, Token>> entries;
  };

  // Parses "op f(a, b) = c" or "op c = a" given the carrier index map.
  void parse_op_statement(const std::map<std::string, int>& index,
                          std::map<std::string, OpLines>& lines) {
    Token name = expect_ident("an operation name");
    if (!sig_.has_symbol(name.text)) {
      fail_at(name.line, name.col, "operation '" + name.text + "' not in the signature");
    }
    int arity = sig_.arity(name.text);
    std::vector<int> args;
    if (at_punct("(")) {
      ++pos_;
      if (!at_punct(")")) {
        args.push_back(parse_element(index));
        while (at_punct(",")) {
          ++pos_;
          args.push_back(parse_element(index));
        }
      }
      expect_punct(")", "to close the argument list");
    }
    if (static_cast<int>(args.size()) != arity) {
      fail_at(name.line, name.col,
              "operation '" + name.text + "' expects " + std::to_string(arity) +
                  " arguments, got " + std::to_string(args.size()));
    }
    expect_punct("=", "before the result element");
    int result = parse_element(index);
    OpLines& l = lines[name.text];
    l.arity = arity;
    auto prior = l.entries.find(args);
    if (prior != l.entries.end()) {
      fail_at(name.line, name.col,
              "operation '" + name.text + "' entry given twice (first at line " +
                  std::to_string(prior->second.second.line) + ")");
    }
    l.entries.emplace(args, std::make_pair(result, name));
  }

  int parse_element(const std::map<std::string, int>& index) {
    Token e = expect_ident("a carrier element");
    auto it = index.find(e.text);
    if (it == index.end()) {
      fail_at(e.line, e.col, "element '" + e.text + "' not in the carrier");
    }
    return it->second;
  }

  // Turns collected op lines into total tables, reporting any missing tuple.
  std::map<std::string, OpTable> assemble_ops(const Token& block,
                                              const std::vector<std::string>& carrier,
                                              std::map<std::string, OpLines>& lines) {
    std::map<std::string, OpTable> ops;
    std::size_t n = carrier.size();
    for (const auto& [name, arity] : sig_.symbols()) {
      OpLines& l = lines[name];
      OpTable t;
      t.arity = arity;
      std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
      std::size_t count = 1;
      for (int i = 0; i < arity; ++i) count *= n;
      if (n == 0) count = arity == 0 ? 1 : 0;
      for (std::size_t c = 0; c < count; ++c) {
        auto it = l.entries.find(tuple);
        if (it == l.entries.end()) {
          std::string args;
          for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i) args += ", ";
            args += carrier[static_cast<std::size_t>(tuple[i])];
          }
          fail_at(block.line, block.col,
                  "operation '" + name + "' is missing the entry for (" + args + ")");
        }
        t.table.push_back(it->second.first);
        for (std::size_t slot = tuple.size(); slot-- > 0;) {
          if (static_cast<std::size_t>(++tuple[slot]) < n) break;
          tuple[slot] = 0;
        }
      }
      ops[name] = std::move(t);
    }
    return ops;
  }

  void parse_algebra_block(Workspace& ws) {
    Token name = expect_ident("an algebra name");
    if (ws.algebras.count(name.text)) {
      fail_at(name.line, name.col, "algebra '" + name.text + "' defined twice");
    }
    expect_punct("{", "to open the algebra block");
    bool have_carrier = false;
    std::vector<std::string> carrier;
    std::map<std::string, int> index;
    std::map<std::string, OpLines> op_lines;
    std::map<std::pair<int, int>, ExtRational> dist_lines;
    while (!at_punct("}")) {
      if (at_punct(";")) {
        ++pos_;
        continue;
      }
      Token kw = expect_ident("a statement keyword");
      if (kw.text == "carrier") {
        if (have_carrier) fail_at(kw.line, kw.col, "carrier given twice");
        carrier = parse_carrier_list();
        for (std::size_t i = 0; i < carrier.size(); ++i) index[carrier[i]] = static_cast<int>(i);
        have_carrier = true;
      } else if (kw.text == "op") {
        if (!have_carrier) fail_at(kw.line, kw.col, "carrier must be declared before op lines");
        parse_op_statement(index, op_lines);
      } else if (kw.text == "dist") {
        if (!have_carrier) fail_at(kw.line, kw.col, "carrier must be declared before dist lines");
        int a = parse_element(index);
        int b = parse_element(index);
        expect_punct("=", "before the distance value");
        ExtRational v = parse_ext_rational();
        if (!dist_lines.emplace(std::make_pair(a, b), v).second) {
          fail_at(kw.line, kw.col,
                  "distance between '" + carrier[static_cast<std::size_t>(a)] + "' and '" +
                      carrier[static_cast<std::size_t>(b)] + "' given twice");
        }
      } else {
        fail_at(kw.line, kw.col, "unknown statement '" + kw.text + "' in algebra block");
      }
    }
    Token close = take();
    if (!have_carrier) fail_at(name.line, name.col, "algebra '" + name.text + "' has no carrier");

    std::size_t n = carrier.size();
    std::vector<ExtRational> dist(n * n, ExtRational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto direct = dist_lines.find({static_cast<int>(i), static_cast<int>(j)});
        if (direct != dist_lines.end()) {
          dist[i * n + j] = direct->second;
          continue;
        }
        auto mirror = dist_lines.find({static_cast<int>(j), static_cast<int>(i)});
        if (mirror != dist_lines.end()) {
          dist[i * n + j] = mirror->second;
          continue;
        }
        if (i == j) continue;  // self-distance defaults to 0
        fail_at(close.line, close.col,
                "algebra '" + name.text + "': distance between '" + carrier[i] + "' and '" +
                    carrier[j] + "' is unspecified");
      }
    }
    std::map<std::string, OpTable> ops = assemble_ops(name, carrier, op_lines);
    try {
      ws.algebras.emplace(name.text,
                          FiniteQuantitativeAlgebra(sig_, carrier, std::move(ops), std::move(dist)));
    } catch (const ValidationError& e) {
      fail_at(name.line, name.col, "in algebra '" + name.text + "': " + e.what());
    }
  }

  void parse_structure_block(Workspace& ws) {
    Token name = expect_ident("a structure name");
    if (ws.structures.count(name.text)) {
      fail_at(name.line, name.col, "structure '" + name.text + "' defined twice");
    }
    expect_punct("{", "to open the structure block");
    bool have_carrier = false;
    std::vector<std::string> carrier;
    std::map<std::string, int> index;
    std::map<std::string, OpLines> op_lines;
    std::map<std::pair<int, int>, ThresholdEntry> pair_lines;
    while (!at_punct("}")) {
      if (at_punct(";")) {
        ++pos_;
        continue;
      }
      Token kw = expect_ident("a statement keyword");
      if (kw.text == "carrier") {
        if (have_carrier) fail_at(kw.line, kw.col, "carrier given twice");
        carrier = parse_carrier_list();
        for (std::size_t i = 0; i < carrier.size(); ++i) index[carrier[i]] = static_cast<int>(i);
        have_carrier = true;
      } else if (kw.text == "op") {
        if (!have_carrier) fail_at(kw.line, kw.col, "carrier must be declared before op lines");
        parse_op_statement(index, op_lines);
      } else if (kw.text == "pair") {
        if (!have_carrier) fail_at(kw.line, kw.col, "carrier must be declared before pair lines");
        int a = parse_element(index);
        int b = parse_element(index);
        expect_punct(":", "before the threshold entry");
        ThresholdEntry entry;
        Token what = expect_ident("'bound' or 'infinite'");
        if (what.text == "infinite") {
          entry = ThresholdEntry::infinite();
        } else if (what.text == "bound") {
          Rational bound = parse_rational();
          Token flag = expect_ident("'closed' or 'open'");
          if (flag.text == "closed") entry = ThresholdEntry::at(bound, Flag::Closed);
          else if (flag.text == "open") entry = ThresholdEntry::at(bound, Flag::Open);
          else fail_at(flag.line, flag.col, "expected 'closed' or 'open'");
        } else {
          fail_at(what.line, what.col, "expected 'bound' or 'infinite'");
        }
        if (!pair_lines.emplace(std::make_pair(a, b), entry).second) {
          fail_at(kw.line, kw.col,
                  "pair '" + carrier[static_cast<std::size_t>(a)] + "' '" +
                      carrier[static_cast<std::size_t>(b)] + "' given twice");
        }
      } else {
        fail_at(kw.line, kw.col, "unknown statement '" + kw.text + "' in structure block");
      }
    }
    Token close = take();
    if (!have_carrier) {
      fail_at(name.line, name.col, "structure '" + name.text + "' has no carrier");
    }

    std::size_t n = carrier.size();
    std::vector<ThresholdEntry> entries(n * n, ThresholdEntry::at(Rational(0), Flag::Closed));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto direct = pair_lines.find({static_cast<int>(i), static_cast<int>(j)});
        if (direct != pair_lines.end()) {
          entries[i * n + j] = direct->second;
          continue;
        }
        auto mirror = pair_lines.find({static_cast<int>(j), static_cast<int>(i)});
        if (mirror != pair_lines.end()) {
          entries[i * n + j] = mirror->second;
          continue;
        }
        if (i == j) continue;  // self-pair defaults to bound 0 closed
        fail_at(close.line, close.col,
                "structure '" + name.text + "': pair '" + carrier[i] + "' '" + carrier[j] +
                    "' is unspecified");
      }
    }
    std::map<std::string, OpTable> ops = assemble_ops(name, carrier, op_lines);
    try {
      ws.structures.emplace(name.text, ThresholdStructure(sig_, carrier, std::move(ops),
                                                          std::move(entries)));
    } catch (const ValidationError& e) {
      fail_at(name.line, name.col, "in structure '" + name.text + "': " + e.what());
    }
  }

  void parse_theory_block(Workspace& ws) {
    Token name = expect_ident("a theory name");
    if (ws.theories.count(name.text)) {
      fail_at(name.line, name.col, "theory '" + name.text + "' defined twice");
    }
    expect_punct("{", "to open the theory block");
    std::vector<ConditionalEquation> axioms;
    while (!at_punct("}")) {
      if (at_punct(";")) {
        ++pos_;
        continue;
      }
      axioms.push_back(parse_judgment());
    }
    expect_punct("}", "to close the theory block");
    ws.theories.emplace(name.text, std::move(axioms));
  }

  void parse_formula_block(Workspace& ws) {
    Token name = expect_ident("a formula name");
    if (ws.formulas.count(name.text)) {
      fail_at(name.line, name.col, "formula '" + name.text + "' defined twice");
    }
    expect_punct("{", "to open the formula block");
    HornFormula phi = parse_formula();
    while (at_punct(";")) ++pos_;
    expect_punct("}", "to close the formula block");
    ws.formulas.emplace(name.text, std::move(phi));
  }
};

std::string ext_rational_source(const ExtRational& v) {
  return v.is_infinite() ? "inf" : v.finite().str();
}

}  // namespace

Workspace parse_workspace(const std::string& text) {
  return Parser(text).parse_workspace_toplevel();
}

ConditionalEquation parse_judgment(const Signature& sig, const std::string& text) {
  return Parser(text).parse_judgment_only(sig);
}

Term parse_term_text(const Signature& sig, const std::string& text) {
  return Parser(text).parse_term_only(sig);
}

HornFormula parse_formula_text(const Signature& sig, const std::string& text) {
  return Parser(text).parse_formula_only(sig);
}

std::string print_signature(const Signature& sig) {
  std::string out = "signature {";
  bool first = true;
  for (const auto& [name, arity] : sig.symbols()) {
    out += first ? " " : "; ";
    first = false;
    out += name + "/" + std::to_string(arity);
  }
  out += " }\nvars {";
  for (const auto& v : sig.variables()) out += " " + v;
  out += " }\n";
  return out;
}

namespace {

// Shared body printer for algebra and structure blocks; entry_line renders
// the per-pair statement or returns an empty string to omit it.
template <typename EntryAt>
std::string print_block(const std::string& keyword, const std::string& name,
                        const std::vector<std::string>& carrier,
                        const std::map<std::string, OpTable>& ops, EntryAt entry_line) {
  std::string out = keyword + " " + name + " {\n  carrier {";
  for (const auto& e : carrier) out += " " + e;
  out += " };\n";
  std::size_t n = carrier.size();
  for (const auto& [op_name, op] : ops) {
    std::vector<int> tuple(static_cast<std::size_t>(op.arity), 0);
    for (std::size_t c = 0; c < op.table.size(); ++c) {
      out += "  op " + op_name;
      if (op.arity > 0) {
        out += "(";
        for (std::size_t i = 0; i < tuple.size(); ++i) {
          if (i) out += ", ";
          out += carrier[static_cast<std::size_t>(tuple[i])];
        }
        out += ")";
      }
      out += " = " + carrier[static_cast<std::size_t>(op.table[c])] + ";\n";
      for (std::size_t slot = tuple.size(); slot-- > 0;) {
        if (static_cast<std::size_t>(++tuple[slot]) < n) break;
        tuple[slot] = 0;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string self = entry_line(i, i, true);
    if (!self.empty()) out += "  " + self + ";\n";
    for (std::size_t j = i + 1; j < n; ++j) {
      out += "  " + entry_line(i, j, false) + ";\n";
      std::string back = entry_line(j, i, true);
      if (!back.empty()) out += "  " + back + ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace

std::string print_algebra(const std::string& name, const FiniteQuantitativeAlgebra& a) {
  return print_block(
      "algebra", name, a.carrier(), a.ops(),
      [&](std::size_t i, std::size_t j, bool only_if_needed) -> std::string {
        const ExtRational& v = a.distance(static_cast<int>(i), static_cast<int>(j));
        if (only_if_needed) {
          if (i == j && v.is_zero()) return "";
          if (i != j && v == a.distance(static_cast<int>(j), static_cast<int>(i))) return "";
        }
        return "dist " + a.carrier()[i] + " " + a.carrier()[j] + " = " + ext_rational_source(v);
      });
}

std::string print_structure(const std::string& name, const ThresholdStructure& m) {
  ThresholdEntry zero_closed = ThresholdEntry::at(Rational(0), Flag::Closed);
  return print_block(
      "structure", name, m.carrier(), m.ops(),
      [&](std::size_t i, std::size_t j, bool only_if_needed) -> std::string {
        const ThresholdEntry& v = m.entry(static_cast<int>(i), static_cast<int>(j));
        if (only_if_needed) {
          if (i == j && v == zero_closed) return "";
          if (i != j && v == m.entry(static_cast<int>(j), static_cast<int>(i))) return "";
        }
        return "pair " + m.carrier()[i] + " " + m.carrier()[j] + " : " + v.str();
      });
}

std::string print_theory(const std::string& name,
                         const std::vector<ConditionalEquation>& axioms) {
  std::string out = "theory " + name + " {\n";
  for (const auto& ce : axioms) out += "  " + ce.str() + ";\n";
  out += "}\n";
  return out;
}

std::string print_formula(const std::string& name, const HornFormula& phi) {
  return "formula " + name + " {\n  " + phi.str() + ";\n}\n";
}

std::string print_workspace(const Workspace& ws) {
  std::string out = print_signature(ws.sig);
  for (const auto& [name, a] : ws.algebras) out += "\n" + print_algebra(name, a);
  for (const auto& [name, t] : ws.theories) out += "\n" + print_theory(name, t);
  for (const auto& [name, m] : ws.structures) out += "\n" + print_structure(name, m);
  for (const auto& [name, phi] : ws.formulas) out += "\n" + print_formula(name, phi);
  return out;
}

RenamedAlgebra rename_carrier(const FiniteQuantitativeAlgebra& a) {
  RenamedAlgebra out;
  std::vector<std::string> fresh;
  fresh.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    fresh.push_back("e" + std::to_string(i));
    out.manifest.emplace_back(fresh.back(), a.carrier()[i]);
  }
  out.algebra = FiniteQuantitativeAlgebra(a.signature(), std::move(fresh), a.ops(),
                                          a.distances());
  return out;
}

RenamedStructure rename_carrier(const ThresholdStructure& m) {
  RenamedStructure out;
  std::vector<std::string> fresh;
  fresh.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    fresh.push_back("e" + std::to_string(i));
    out.manifest.emplace_back(fresh.back(), m.carrier()[i]);
  }
  out.structure = ThresholdStructure(m.signature(), std::move(fresh), m.ops(), m.entries());
  return out;
}

}  // namespace qaw
