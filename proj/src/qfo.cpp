// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/qfo.hpp"

#include <algorithm>
#include <set>

#include "qaw/error.hpp"

namespace qaw {

namespace {

std::size_t checked_pow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > SIZE_MAX / base) {
      throw ValidationError("operation table size overflow");
    }
    r *= base;
  }
  return r;
}

std::string tuple_name(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += ")";
  return out;
}

bool for_each_tuple(std::size_t k, std::size_t n,
                    const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k, 0);
  if (k > 0 && n == 0) return true;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t slot = k;
    while (slot > 0) {
      --slot;
      if (idx[slot] + 1 < static_cast<int>(n)) {
        ++idx[slot];
        break;
      }
      idx[slot] = 0;
      if (slot == 0) return true;
    }
    if (k == 0) return true;
  }
}

}  // namespace

ThresholdEntry ThresholdEntry::infinite() {
  ThresholdEntry e;
  e.empty = true;
  return e;
}

ThresholdEntry ThresholdEntry::at(const Rational& bound, Flag flag) {
  if (bound.is_negative()) throw ValidationError("negative threshold bound");
  ThresholdEntry e;
  e.bound = bound;
  e.flag = flag;
  return e;
}

bool ThresholdEntry::contains(const Rational& eps) const {
  if (empty) return false;
  if (bound < eps) return true;
  return bound == eps && flag == Flag::Closed;
}

bool ThresholdEntry::subset_of(const ThresholdEntry& o) const {
  if (empty) return true;
  if (o.empty) return false;
  if (o.bound < bound) return true;
  return o.bound == bound && (o.flag == Flag::Closed || flag == Flag::Open);
}

std::string ThresholdEntry::str() const {
  if (empty) return "infinite";
  return "bound " + bound.str() + (flag == Flag::Closed ? " closed" : " open");
}

bool ThresholdEntry::operator==(const ThresholdEntry& o) const {
  if (empty || o.empty) return empty == o.empty;
  return bound == o.bound && flag == o.flag;
}

ThresholdEntry intersect(const ThresholdEntry& a, const ThresholdEntry& b) {
  if (a.empty || b.empty) return ThresholdEntry::infinite();
  if (a.bound > b.bound) return a;
  if (b.bound > a.bound) return b;
  return ThresholdEntry::at(a.bound,
                            (a.flag == Flag::Open || b.flag == Flag::Open) ? Flag::Open
                                                                           : Flag::Closed);
}

ThresholdEntry ray_sum(const ThresholdEntry& a, const ThresholdEntry& b) {
  if (a.empty || b.empty) return ThresholdEntry::infinite();
  return ThresholdEntry::at(a.bound + b.bound,
                            (a.flag == Flag::Closed && b.flag == Flag::Closed) ? Flag::Closed
                                                                               : Flag::Open);
}

ThresholdStructure::ThresholdStructure(Signature sig, std::vector<std::string> carrier,
                                       std::map<std::string, OpTable> ops,
                                       std::vector<ThresholdEntry> entries)
    : sig_(std::move(sig)), carrier_(std::move(carrier)), ops_(std::move(ops)),
      entries_(std::move(entries)) {
  for (std::size_t i = 0; i < carrier_.size(); ++i) {
    if (carrier_[i].empty()) throw ValidationError("empty carrier element name");
    if (!index_.emplace(carrier_[i], static_cast<int>(i)).second) {
      throw ValidationError("duplicate carrier element '" + carrier_[i] + "'");
    }
  }
  std::size_t n = carrier_.size();
  for (const auto& [name, ar] : sig_.symbols()) {
    auto it = ops_.find(name);
    if (it == ops_.end()) {
      throw ValidationError("operation '" + name + "' has no table");
    }
    if (it->second.arity != ar) {
      throw ValidationError("operation '" + name + "' declared with arity " +
                            std::to_string(ar) + " but table has arity " +
                            std::to_string(it->second.arity));
    }
    if (n == 0 && ar == 0) {
      throw ValidationError("constant '" + name + "' cannot be interpreted in a void carrier");
    }
    std::size_t want = checked_pow(n, ar);
    if (it->second.table.size() != want) {
      throw ValidationError("operation '" + name + "' table has " +
                            std::to_string(it->second.table.size()) + " entries, expected " +
                            std::to_string(want));
    }
    for (int v : it->second.table) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw ValidationError("operation '" + name + "' table entry out of range");
      }
    }
  }
  for (const auto& [name, op] : ops_) {
    (void)op;
    if (!sig_.has_symbol(name)) {
      throw ValidationError("table for symbol '" + name + "' absent from the signature");
    }
  }
  if (entries_.size() != n * n) {
    throw ValidationError("entry table has " + std::to_string(entries_.size()) +
                          " entries, expected " + std::to_string(n * n));
  }
  for (const auto& e : entries_) {
    if (!e.empty && e.bound.is_negative()) throw ValidationError("negative threshold bound");
  }
}

int ThresholdStructure::index_of(const std::string& element) const {
  auto it = index_.find(element);
  return it == index_.end() ? -1 : it->second;
}

int ThresholdStructure::require_index(const std::string& element) const {
  int i = index_of(element);
  if (i < 0) throw ValidationError("element '" + element + "' not in carrier");
  return i;
}

const ThresholdEntry& ThresholdStructure::entry(int i, int j) const {
  return entries_[static_cast<std::size_t>(i) * carrier_.size() + static_cast<std::size_t>(j)];
}

const ThresholdEntry& ThresholdStructure::entry(const std::string& a,
                                                const std::string& b) const {
  return entry(require_index(a), require_index(b));
}

int ThresholdStructure::op_apply(const std::string& symbol, const std::vector<int>& args) const {
  auto it = ops_.find(symbol);
  if (it == ops_.end()) throw ValidationError("unknown operation '" + symbol + "'");
  const OpTable& op = it->second;
  if (args.size() != static_cast<std::size_t>(op.arity)) {
    throw ValidationError("operation '" + symbol + "' applied to wrong tuple size");
  }
  std::size_t code = 0;
  for (int a : args) code = code * carrier_.size() + static_cast<std::size_t>(a);
  return op.table[code];
}

bool ThresholdStructure::same_as(const ThresholdStructure& o) const {
  if (carrier_ != o.carrier_) return false;
  if (sig_.symbols() != o.sig_.symbols()) return false;
  for (const auto& [name, op] : ops_) {
    auto it = o.ops_.find(name);
    if (it == o.ops_.end() || it->second.arity != op.arity || it->second.table != op.table) {
      return false;
    }
  }
  if (entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != o.entries_[i]) return false;
  }
  return true;
}

bool QfoAxiomReport::all_pass() const {
  for (const auto& v : axioms) {
    if (!v.ok) return false;
  }
  return true;
}

std::vector<int> QfoAxiomReport::failing() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    if (!axioms[i].ok) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::string QfoAxiomReport::summary() const {
  std::string out;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    if (i) out += "\n";
    out += "axiom (" + std::to_string(i + 1) + "): ";
    out += axioms[i].ok ? "pass" : ("fail: " + axioms[i].summary());
  }
  return out;
}

QfoAxiomReport check_qfo_axioms(const ThresholdStructure& m) {
  QfoAxiomReport report;
  std::size_t n = m.size();
  ThresholdEntry zero_closed = ThresholdEntry::at(Rational(0), Flag::Closed);

  Verdict& a1 = report.axioms[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (m.entry(static_cast<int>(i), static_cast<int>(i)) != zero_closed) {
      a1.fail("self-pair of '" + m.element(static_cast<int>(i)) + "' is " +
              m.entry(static_cast<int>(i), static_cast<int>(i)).str() +
              ", expected bound 0 closed");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m.entry(static_cast<int>(i), static_cast<int>(j)) == zero_closed) {
        a1.fail("distinct elements '" + m.element(static_cast<int>(i)) + "' and '" +
                m.element(static_cast<int>(j)) + "' related at every threshold including 0");
      }
    }
  }

  Verdict& a2 = report.axioms[1];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.entry(static_cast<int>(i), static_cast<int>(j)) !=
          m.entry(static_cast<int>(j), static_cast<int>(i))) {
        a2.fail("pair ('" + m.element(static_cast<int>(i)) + "', '" +
                m.element(static_cast<int>(j)) + "') is " +
                m.entry(static_cast<int>(i), static_cast<int>(j)).str() + " but the reverse is " +
                m.entry(static_cast<int>(j), static_cast<int>(i)).str());
      }
    }
  }

  Verdict& a3 = report.axioms[2];
  for (std::size_t i = 0; i < n && a3.issues.size() < 24; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        ThresholdEntry through = ray_sum(m.entry(static_cast<int>(i), static_cast<int>(k)),
                                         m.entry(static_cast<int>(k), static_cast<int>(j)));
        if (!through.subset_of(m.entry(static_cast<int>(i), static_cast<int>(j)))) {
          a3.fail("composing through '" + m.element(static_cast<int>(k)) + "' relates '" +
                  m.element(static_cast<int>(i)) + "' and '" + m.element(static_cast<int>(j)) +
                  "' at " + through.str() + ", tighter than the recorded " +
                  m.entry(static_cast<int>(i), static_cast<int>(j)).str());
        }
      }
    }
  }

  // Axiom 4 (up-closure in the threshold) cannot fail: entries are rays.

  Verdict& a5 = report.axioms[4];
  for (const auto& [name, op] : m.ops()) {
    if (!a5.issues.empty()) break;
    std::size_t arity = static_cast<std::size_t>(op.arity);
    for_each_tuple(arity, n, [&](const std::vector<int>& xs) {
      return for_each_tuple(arity, n, [&](const std::vector<int>& ys) {
        ThresholdEntry joint = ThresholdEntry::at(Rational(0), Flag::Closed);
        for (std::size_t i = 0; i < arity; ++i) {
          joint = intersect(joint, m.entry(xs[i], ys[i]));
        }
        const ThresholdEntry& image = m.entry(m.op_apply(name, xs), m.op_apply(name, ys));
        if (!joint.subset_of(image)) {
          std::vector<std::string> lp, rp;
          for (std::size_t i = 0; i < arity; ++i) {
            lp.push_back(m.element(xs[i]));
            rp.push_back(m.element(ys[i]));
          }
          a5.fail("operation '" + name + "' maps arguments related at " + joint.str() + " (" +
                  tuple_name(lp) + " vs " + tuple_name(rp) + ") to a pair related only at " +
                  image.str());
          return false;
        }
        return true;
      });
    });
  }

  Verdict& a6 = report.axioms[5];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ThresholdEntry& e = m.entry(static_cast<int>(i), static_cast<int>(j));
      if (!e.empty && e.flag == Flag::Open) {
        a6.fail("pair ('" + m.element(static_cast<int>(i)) + "', '" +
                m.element(static_cast<int>(j)) +
                "') is an open ray; its infimum threshold is never attained");
      }
    }
  }
  return report;
}

ThresholdStructure to_qfo(const FiniteQuantitativeAlgebra& a) {
  std::vector<ThresholdEntry> entries;
  entries.reserve(a.size() * a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      const ExtRational& d = a.distance(i, j);
      entries.push_back(d.is_infinite() ? ThresholdEntry::infinite()
                                        : ThresholdEntry::at(d.finite(), Flag::Closed));
    }
  }
  return ThresholdStructure(a.signature(), a.carrier(), a.ops(), std::move(entries));
}

FiniteQuantitativeAlgebra to_algebra(const ThresholdStructure& m) {
  QfoAxiomReport report = check_qfo_axioms(m);
  if (!report.all_pass()) {
    std::string which;
    for (int k : report.failing()) {
      if (!which.empty()) which += ", ";
      which += "(" + std::to_string(k) + ")";
    }
    throw ValidationError("structure violates axiom " + which + ": " +
                          report.axioms[static_cast<std::size_t>(report.failing().front() - 1)]
                              .issues.front());
  }
  std::vector<ExtRational> dist;
  dist.reserve(m.size() * m.size());
  for (const auto& e : m.entries()) {
    dist.push_back(e.empty ? ExtRational::infinity() : ExtRational(e.bound));
  }
  return FiniteQuantitativeAlgebra(m.signature(), m.carrier(), m.ops(), std::move(dist));
}

std::string FilterSpec::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < generator.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(generator[i]);
  }
  out += "} over " + std::to_string(index_count) + " indices";
  return out;
}

namespace {

void validate_filter(const FilterSpec& f, std::size_t how_many) {
  if (f.index_count != how_many) {
    throw ValidationError("filter index set has " + std::to_string(f.index_count) +
                          " indices but " + std::to_string(how_many) + " structures were given");
  }
  if (f.generator.empty()) {
    throw ValidationError("empty filter generator: the improper filter admits no reduced product");
  }
  std::set<std::size_t> seen;
  for (std::size_t i : f.generator) {
    if (i >= f.index_count) {
      throw ValidationError("filter generator index " + std::to_string(i) + " out of range");
    }
    if (!seen.insert(i).second) {
      throw ValidationError("duplicate filter generator index " + std::to_string(i));
    }
  }
}

}  // namespace

ThresholdStructure reduced_product(const std::vector<ThresholdStructure>& ms,
                                   const FilterSpec& filter, const Budgets& budgets) {
  validate_filter(filter, ms.size());
  if (ms.empty()) throw ValidationError("reduced product needs at least one structure");
  const Signature& sig = ms.front().signature();
  for (const auto& m : ms) {
    if (m.signature().symbols() != sig.symbols()) {
      throw ValidationError("reduced product factors interpret different signatures");
    }
  }
  std::vector<std::size_t> coords(filter.generator.begin(), filter.generator.end());
  std::sort(coords.begin(), coords.end());

  // Two full tuples are filter-equal exactly when they agree on the generator
  // coordinates, so classes are in bijection with generator-coordinate tuples.
  std::size_t total = 1;
  std::vector<std::size_t> sizes;
  for (std::size_t c : coords) {
    sizes.push_back(ms[c].size());
    if (ms[c].size() == 0) {
      total = 0;
    } else if (total > budgets.carrier_cap / ms[c].size()) {
      throw BudgetError("reduced product carrier exceeds the carrier cap");
    } else {
      total *= ms[c].size();
    }
  }

  std::vector<std::size_t> place(coords.size(), 1);
  for (std::size_t i = coords.size(); i-- > 1;) place[i - 1] = place[i] * sizes[i];
  auto coord = [&](std::size_t e, std::size_t i) {
    return static_cast<int>((e / place[i]) % sizes[i]);
  };

  std::vector<std::string> carrier;
  carrier.reserve(total);
  for (std::size_t e = 0; e < total; ++e) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      parts.push_back(ms[coords[i]].element(coord(e, i)));
    }
    carrier.push_back(tuple_name(parts));
  }

  std::map<std::string, OpTable> ops;
  for (const auto& [name, arity] : sig.symbols()) {
    if (total == 0) {
      ops[name] = OpTable{arity, {}};
      continue;
    }
    std::uint64_t cells = 1;
    for (int a = 0; a < arity; ++a) {
      if (cells > budgets.step_cap / total) {
        throw BudgetError("reduced product operation tables exceed the step budget");
      }
      cells *= total;
    }
    OpTable t;
    t.arity = arity;
    t.table.reserve(cells);
    for_each_tuple(static_cast<std::size_t>(arity), total, [&](const std::vector<int>& args) {
      std::size_t result = 0;
      std::vector<int> sub(args.size());
      for (std::size_t i = 0; i < coords.size(); ++i) {
        for (std::size_t a = 0; a < args.size(); ++a) {
          sub[a] = coord(static_cast<std::size_t>(args[a]), i);
        }
        result += static_cast<std::size_t>(ms[coords[i]].op_apply(name, sub)) * place[i];
      }
      t.table.push_back(static_cast<int>(result));
      return true;
    });
    ops[name] = std::move(t);
  }

  std::vector<ThresholdEntry> entries(total * total);
  for (std::size_t e = 0; e < total; ++e) {
    for (std::size_t g = 0; g < total; ++g) {
      ThresholdEntry joint = ThresholdEntry::at(Rational(0), Flag::Closed);
      for (std::size_t i = 0; i < coords.size(); ++i) {
        joint = intersect(joint, ms[coords[i]].entry(coord(e, i), coord(g, i)));
      }
      entries[e * total + g] = joint;
    }
  }
  return ThresholdStructure(sig, std::move(carrier), std::move(ops), std::move(entries));
}

ThresholdStructure subobject(const ThresholdStructure& m, const std::vector<std::string>& subset) {
  std::set<int> keep;
  for (const auto& name : subset) keep.insert(m.require_index(name));
  std::vector<int> members(keep.begin(), keep.end());
  std::map<int, int> down;
  for (std::size_t i = 0; i < members.size(); ++i) down[members[i]] = static_cast<int>(i);

  std::map<std::string, OpTable> ops;
  for (const auto& [name, op] : m.ops()) {
    OpTable t;
    t.arity = op.arity;
    for_each_tuple(static_cast<std::size_t>(op.arity), members.size(),
                   [&](const std::vector<int>& pick) {
                     std::vector<int> args(pick.size());
                     for (std::size_t i = 0; i < pick.size(); ++i) args[i] = members[pick[i]];
                     int r = m.op_apply(name, args);
                     auto it = down.find(r);
                     if (it == down.end()) {
                       throw ValidationError("subset is not closed under '" + name +
                                             "': element '" + m.element(r) + "' escapes");
                     }
                     t.table.push_back(it->second);
                     return true;
                   });
    ops[name] = std::move(t);
  }

  std::vector<std::string> carrier;
  for (int i : members) carrier.push_back(m.element(i));
  std::vector<ThresholdEntry> entries(members.size() * members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      entries[i * members.size() + j] = m.entry(members[i], members[j]);
    }
  }
  return ThresholdStructure(m.signature(), std::move(carrier), std::move(ops),
                            std::move(entries));
}

namespace {

// Backtracking search for an injection of the candidate into the host that
// preserves entries exactly in both orientations and commutes with every
// operation once all the relevant elements are placed.
bool embedding_exists(const ThresholdStructure& cand, const ThresholdStructure& host,
                      const Budgets& budgets) {
  std::size_t n = cand.size();
  std::vector<int> image(n, -1);
  std::vector<bool> used(host.size(), false);
  std::uint64_t steps = 0;

  std::function<bool(std::size_t)> place = [&](std::size_t at) -> bool {
    if (at == n) {
      for (const auto& [name, op] : cand.ops()) {
        bool ok = for_each_tuple(static_cast<std::size_t>(op.arity), n,
                                 [&](const std::vector<int>& args) {
                                   std::vector<int> himg(args.size());
                                   for (std::size_t i = 0; i < args.size(); ++i) {
                                     himg[i] = image[static_cast<std::size_t>(args[i])];
                                   }
                                   return image[static_cast<std::size_t>(
                                              cand.op_apply(name, args))] ==
                                          host.op_apply(name, himg);
                                 });
        if (!ok) return false;
      }
      return true;
    }
    for (std::size_t h = 0; h < host.size(); ++h) {
      if (used[h]) continue;
      if (++steps > budgets.step_cap) {
        throw BudgetError("embedding search exceeds the step budget");
      }
      bool fits = true;
      for (std::size_t prev = 0; prev <= at && fits; ++prev) {
        int hp = prev == at ? static_cast<int>(h) : image[prev];
        if (cand.entry(static_cast<int>(at), static_cast<int>(prev)) !=
                host.entry(static_cast<int>(h), hp) ||
            cand.entry(static_cast<int>(prev), static_cast<int>(at)) !=
                host.entry(hp, static_cast<int>(h))) {
          fits = false;
        }
      }
      if (!fits) continue;
      image[at] = static_cast<int>(h);
      used[h] = true;
      if (place(at + 1)) return true;
      image[at] = -1;
      used[h] = false;
    }
    return false;
  };
  return place(0);
}

}  // namespace

bool is_subreduced_product(const ThresholdStructure& candidate,
                           const std::vector<ThresholdStructure>& ms, const FilterSpec& filter,
                           const Budgets& budgets) {
  if (!check_qfo_axioms(candidate).all_pass()) return false;
  ThresholdStructure host = reduced_product(ms, filter, budgets);
  if (candidate.signature().symbols() != host.signature().symbols()) return false;
  if (candidate.size() > host.size()) return false;
  return embedding_exists(candidate, host, budgets);
}

HornAtom HornAtom::threshold(Term l, Term r, const Rational& bound) {
  if (bound.is_negative()) throw ValidationError("negative bound in threshold atom");
  HornAtom a;
  a.is_threshold = true;
  a.left = std::move(l);
  a.right = std::move(r);
  a.bound = bound;
  return a;
}

HornAtom HornAtom::equality(Term l, Term r) {
  HornAtom a;
  a.is_threshold = false;
  a.left = std::move(l);
  a.right = std::move(r);
  return a;
}

std::string HornAtom::str() const {
  if (is_threshold) return left.str() + " =[" + bound.str() + "] " + right.str();
  return left.str() + " == " + right.str();
}

std::string HornFormula::str() const {
  std::string out = "forall";
  for (const auto& v : vars) out += " " + v;
  out += " . (";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += " & ";
    out += body[i].str();
  }
  out += ") -> " + head.str();
  return out;
}

namespace {

void validate_horn(const Signature& sig, const HornFormula& phi) {
  std::set<std::string> quantified;
  for (const auto& v : phi.vars) {
    if (!sig.has_variable(v)) {
      throw ValidationError("quantified variable '" + v + "' not declared in the signature");
    }
    if (!quantified.insert(v).second) {
      throw ValidationError("variable '" + v + "' quantified twice");
    }
  }
  auto check_atom = [&](const HornAtom& a) {
    validate_term(sig, a.left);
    validate_term(sig, a.right);
    for (const auto& t : {a.left, a.right}) {
      for (const auto& v : variables_of(t)) {
        if (!quantified.count(v)) {
          throw ValidationError("unbound variable '" + v + "' in atom " + a.str());
        }
      }
    }
  };
  for (const auto& a : phi.body) check_atom(a);
  check_atom(phi.head);
}

}  // namespace

HornResult eval_horn(const ThresholdStructure& m, const HornFormula& phi) {
  validate_horn(m.signature(), phi);
  HornResult result;
  if (m.size() == 0) {
    result.detail = "holds vacuously on the void structure";
    return result;
  }

  auto atom_holds = [&](const HornAtom& a, const std::map<std::string, int>& val) {
    auto var_index = [&](const std::string& v) { return val.at(v); };
    int li = eval_with_tables(m.ops(), m.size(), var_index, a.left);
    int ri = eval_with_tables(m.ops(), m.size(), var_index, a.right);
    if (!a.is_threshold) return li == ri;
    return m.entry(li, ri).contains(a.bound);
  };

  bool done = for_each_tuple(phi.vars.size(), m.size(), [&](const std::vector<int>& idx) {
    std::map<std::string, int> val;
    for (std::size_t i = 0; i < phi.vars.size(); ++i) val[phi.vars[i]] = idx[i];
    bool premises = true;
    for (const auto& a : phi.body) {
      if (!atom_holds(a, val)) {
        premises = false;
        break;
      }
    }
    if (premises && !atom_holds(phi.head, val)) {
      Assignment named;
      for (const auto& [v, i] : val) named[v] = m.element(i);
      result.holds = false;
      result.counterexample = named;
      result.detail = "head " + phi.head.str() + " fails under " + assignment_str(named);
      return false;
    }
    return true;
  });
  (void)done;
  if (result.holds) result.detail = "holds under every valuation";
  return result;
}

HornFormula horn_of_conditional(const ConditionalEquation& ce) {
  HornFormula phi;
  phi.vars = variables_of(ce);
  for (const auto& h : ce.hypotheses) {
    phi.body.push_back(HornAtom::threshold(h.left, h.right, h.bound));
  }
  phi.head = HornAtom::threshold(ce.conclusion.left, ce.conclusion.right, ce.conclusion.bound);
  return phi;
}

ConditionalEquation conditional_of_horn(const HornFormula& phi) {
  auto to_equation = [](const HornAtom& a) {
    return a.is_threshold ? QuantitativeEquation(a.left, a.right, a.bound)
                          : QuantitativeEquation(a.left, a.right, Rational(0));
  };
  std::vector<QuantitativeEquation> hyps;
  hyps.reserve(phi.body.size());
  for (const auto& a : phi.body) hyps.push_back(to_equation(a));
  return ConditionalEquation(std::move(hyps), to_equation(phi.head));
}

}  // namespace qaw
