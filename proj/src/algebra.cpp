// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/algebra.hpp"

#include <algorithm>
#include <set>

#include "qaw/error.hpp"

namespace qaw {

std::string Verdict::summary() const {
  if (ok) return "ok";
  std::string out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out += "; ";
    out += issues[i];
  }
  return out;
}

std::string assignment_str(const Assignment& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, e] : a) {
    if (!first) out += ", ";
    first = false;
    out += v + " -> " + e;
  }
  out += "}";
  return out;
}

namespace {

std::size_t checked_pow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > SIZE_MAX / (base == 0 ? 1 : base)) {
      throw ValidationError("operation table size overflow");
    }
    r *= base;
  }
  return r;
}

// Decodes the mixed-radix tuple index back into argument indices.
std::vector<int> decode_tuple(std::size_t code, int arity, std::size_t n) {
  std::vector<int> args(static_cast<std::size_t>(arity), 0);
  for (int i = arity - 1; i >= 0; --i) {
    args[static_cast<std::size_t>(i)] = static_cast<int>(code % n);
    code /= n;
  }
  return args;
}

std::string tuple_str(const FiniteQuantitativeAlgebra& a, const std::vector<int>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += a.element(args[i]);
  }
  out += ")";
  return out;
}

}  // namespace

FiniteQuantitativeAlgebra::FiniteQuantitativeAlgebra(Signature sig,
                                                     std::vector<std::string> carrier,
                                                     std::map<std::string, OpTable> ops,
                                                     std::vector<ExtRational> distances)
    : sig_(std::move(sig)), carrier_(std::move(carrier)), ops_(std::move(ops)),
      dist_(std::move(distances)) {
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
    std::size_t want = checked_pow(n, ar);
    if (n == 0 && ar == 0) {
      throw ValidationError("constant '" + name + "' cannot be interpreted in a void carrier");
    }
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
  if (dist_.size() != n * n) {
    throw ValidationError("distance matrix has " + std::to_string(dist_.size()) +
                          " entries, expected " + std::to_string(n * n));
  }
  for (const auto& d : dist_) {
    if (!d.is_infinite() && d.finite().is_negative()) {
      throw ValidationError("negative distance in matrix");
    }
  }
}

int FiniteQuantitativeAlgebra::index_of(const std::string& element) const {
  auto it = index_.find(element);
  return it == index_.end() ? -1 : it->second;
}

int FiniteQuantitativeAlgebra::require_index(const std::string& element) const {
  int i = index_of(element);
  if (i < 0) throw ValidationError("element '" + element + "' not in carrier");
  return i;
}

const ExtRational& FiniteQuantitativeAlgebra::distance(int i, int j) const {
  return dist_[static_cast<std::size_t>(i) * carrier_.size() + static_cast<std::size_t>(j)];
}

const ExtRational& FiniteQuantitativeAlgebra::distance(const std::string& a,
                                                       const std::string& b) const {
  return distance(require_index(a), require_index(b));
}

int FiniteQuantitativeAlgebra::op_apply(const std::string& symbol,
                                        const std::vector<int>& args) const {
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

bool FiniteQuantitativeAlgebra::same_as(const FiniteQuantitativeAlgebra& o) const {
  if (carrier_ != o.carrier_) return false;
  if (sig_.symbols() != o.sig_.symbols()) return false;
  for (const auto& [name, op] : ops_) {
    auto it = o.ops_.find(name);
    if (it == o.ops_.end() || it->second.arity != op.arity || it->second.table != op.table) {
      return false;
    }
  }
  if (dist_.size() != o.dist_.size()) return false;
  for (std::size_t i = 0; i < dist_.size(); ++i) {
    if (dist_[i] != o.dist_[i]) return false;
  }
  return true;
}

Verdict validate_algebra(const FiniteQuantitativeAlgebra& a) {
  Verdict v;
  const std::size_t n = a.size();
  const std::size_t issue_cap = 24;
  auto note = [&v, issue_cap](const std::string& msg) {
    if (v.issues.size() < issue_cap) v.fail(msg);
    else v.ok = false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.distance(i, i).is_zero()) {
      note("self-distance of '" + a.element(static_cast<int>(i)) + "' is " +
           a.distance(i, i).str() + ", expected 0");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && a.distance(i, j).is_zero()) {
        note("distinct elements '" + a.element(static_cast<int>(i)) + "' and '" +
             a.element(static_cast<int>(j)) + "' at distance 0");
      }
      if (a.distance(i, j) != a.distance(j, i)) {
        note("asymmetric distance between '" + a.element(static_cast<int>(i)) + "' and '" +
             a.element(static_cast<int>(j)) + "'");
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (a.distance(i, k) > a.distance(i, j) + a.distance(j, k)) {
          note("triangle violation at ('" + a.element(static_cast<int>(i)) + "', '" +
               a.element(static_cast<int>(j)) + "', '" + a.element(static_cast<int>(k)) + "')");
        }
      }
    }
  }
  for (const auto& [name, op] : a.ops()) {
    std::size_t tuples = op.table.size();
    for (std::size_t p = 0; p < tuples; ++p) {
      for (std::size_t q = 0; q < tuples; ++q) {
        std::vector<int> ta = decode_tuple(p, op.arity, n);
        std::vector<int> tb = decode_tuple(q, op.arity, n);
        ExtRational bound(0);
        for (int i = 0; i < op.arity; ++i) {
          bound = max(bound, a.distance(ta[static_cast<std::size_t>(i)],
                                        tb[static_cast<std::size_t>(i)]));
        }
        if (a.distance(op.table[p], op.table[q]) > bound) {
          note("operation '" + name + "' expands distance at " + tuple_str(a, ta) + " vs " +
               tuple_str(a, tb));
        }
      }
    }
  }
  return v;
}

int eval_with_tables(const std::map<std::string, OpTable>& ops, std::size_t carrier_size,
                     const std::function<int(const std::string&)>& var_index, const Term& t) {
  if (t.is_variable()) return var_index(t.head());
  auto it = ops.find(t.head());
  if (it == ops.end()) throw ValidationError("unknown operation '" + t.head() + "'");
  std::size_t code = 0;
  for (const Term& a : t.args()) {
    code = code * carrier_size + static_cast<std::size_t>(eval_with_tables(ops, carrier_size, var_index, a));
  }
  return it->second.table[code];
}

int evaluate_index(const FiniteQuantitativeAlgebra& a, const Assignment& assign, const Term& t) {
  return eval_with_tables(a.ops(), a.size(), [&](const std::string& v) {
    auto it = assign.find(v);
    if (it == assign.end()) throw ValidationError("variable '" + v + "' unbound in assignment");
    return a.require_index(it->second);
  }, t);
}

std::string evaluate(const FiniteQuantitativeAlgebra& a, const Assignment& assign, const Term& t) {
  return a.element(evaluate_index(a, assign, t));
}

namespace {

// Enumerates assignments of vars into the carrier in canonical order and
// feeds them to cb until it returns false.
void for_each_assignment(const std::vector<std::string>& vars, std::size_t n,
                         const std::function<bool(const std::vector<int>&)>& cb) {
  if (n == 0) return;  // no assignments into a void carrier
  std::vector<int> idx(vars.size(), 0);
  while (true) {
    if (!cb(idx)) return;
    std::size_t k = idx.size();
    while (k > 0 && static_cast<std::size_t>(++idx[k - 1]) == n) idx[--k] = 0;
    if (k == 0) break;
  }
}

}  // namespace

SatisfactionResult satisfies(const FiniteQuantitativeAlgebra& a, const ConditionalEquation& ce) {
  validate_equation(a.signature(), ce);
  std::vector<std::string> vars = variables_of(ce);
  SatisfactionResult res;
  if (a.size() == 0) return res;  // vacuous: no assignments exist
  for_each_assignment(vars, a.size(), [&](const std::vector<int>& idx) {
    Assignment assign;
    for (std::size_t i = 0; i < vars.size(); ++i) assign[vars[i]] = a.element(idx[i]);
    for (const auto& h : ce.hypotheses) {
      ExtRational d = a.distance(evaluate_index(a, assign, h.left),
                                 evaluate_index(a, assign, h.right));
      if (!(d <= ExtRational(h.bound))) return true;  // hypothesis unmet, next assignment
    }
    int li = evaluate_index(a, assign, ce.conclusion.left);
    int ri = evaluate_index(a, assign, ce.conclusion.right);
    ExtRational d = a.distance(li, ri);
    if (!(d <= ExtRational(ce.conclusion.bound))) {
      res.holds = false;
      res.counterexample = assign;
      res.detail = "distance(" + a.element(li) + ", " + a.element(ri) + ") = " + d.str() +
                   " exceeds " + ce.conclusion.bound.str() + " under " + assignment_str(assign);
      return false;
    }
    return true;
  });
  return res;
}

SatisfactionResult satisfies_theory(const FiniteQuantitativeAlgebra& a,
                                    const std::vector<ConditionalEquation>& axioms) {
  for (const auto& ce : axioms) {
    SatisfactionResult r = satisfies(a, ce);
    if (!r.holds) {
      r.detail = "fails " + ce.str() + ": " + r.detail;
      return r;
    }
  }
  return SatisfactionResult{};
}

Verdict is_homomorphism(const HomomorphismWitness& h) {
  Verdict v;
  if (h.source.signature().symbols() != h.target.signature().symbols()) {
    v.fail("source and target interpret different signatures");
    return v;
  }
  std::vector<int> img(h.source.size(), -1);
  for (std::size_t i = 0; i < h.source.size(); ++i) {
    auto it = h.map.find(h.source.element(static_cast<int>(i)));
    if (it == h.map.end()) {
      v.fail("element '" + h.source.element(static_cast<int>(i)) + "' unmapped");
      continue;
    }
    int t = h.target.index_of(it->second);
    if (t < 0) {
      v.fail("image '" + it->second + "' not in target carrier");
      continue;
    }
    img[i] = t;
  }
  for (const auto& [name, e] : h.map) {
    (void)e;
    if (h.source.index_of(name) < 0) {
      v.fail("map mentions '" + name + "' outside the source carrier");
    }
  }
  if (!v.ok) return v;

  for (const auto& [name, op] : h.source.ops()) {
    std::size_t tuples = op.table.size();
    for (std::size_t p = 0; p < tuples; ++p) {
      std::vector<int> src_args = decode_tuple(p, op.arity, h.source.size());
      std::vector<int> tgt_args(src_args.size());
      for (std::size_t i = 0; i < src_args.size(); ++i) {
        tgt_args[i] = img[static_cast<std::size_t>(src_args[i])];
      }
      int lhs = img[static_cast<std::size_t>(op.table[p])];
      int rhs = h.target.op_apply(name, tgt_args);
      if (lhs != rhs) {
        v.fail("operation '" + name + "' does not commute at " + tuple_str(h.source, src_args));
      }
    }
  }
  for (std::size_t i = 0; i < h.source.size(); ++i) {
    for (std::size_t j = 0; j < h.source.size(); ++j) {
      if (h.target.distance(img[i], img[j]) > h.source.distance(i, j)) {
        v.fail("map expands distance between '" + h.source.element(static_cast<int>(i)) +
               "' and '" + h.source.element(static_cast<int>(j)) + "'");
      }
    }
  }
  return v;
}

bool is_surjective(const HomomorphismWitness& h) {
  std::set<std::string> hit;
  for (const auto& [s, t] : h.map) {
    (void)s;
    hit.insert(t);
  }
  return hit.size() == h.target.size();
}

bool is_c_reflexive(const HomomorphismWitness& h, std::size_t c) {
  std::vector<int> image;  // target indices, ascending
  {
    std::set<int> img;
    for (const auto& [s, t] : h.map) {
      (void)s;
      img.insert(h.target.require_index(t));
    }
    image.assign(img.begin(), img.end());
  }
  std::vector<std::vector<int>> fiber_of(h.target.size());
  for (std::size_t i = 0; i < h.source.size(); ++i) {
    const std::string& name = h.source.element(static_cast<int>(i));
    fiber_of[static_cast<std::size_t>(h.target.require_index(h.map.at(name)))].push_back(
        static_cast<int>(i));
  }

  // A selection of one preimage per element of the subset that preserves all
  // pairwise distances exactly; selections with repeated fiber members would
  // force two distinct source elements to distance 0, so one-per-fiber is
  // fully general here.
  auto subset_lifts = [&](const std::vector<int>& subset) {
    std::size_t m = subset.size();
    std::vector<std::size_t> sel(m, 0);
    while (true) {
      bool iso = true;
      for (std::size_t i = 0; i < m && iso; ++i) {
        for (std::size_t j = i + 1; j < m && iso; ++j) {
          int u = fiber_of[static_cast<std::size_t>(subset[i])][sel[i]];
          int v = fiber_of[static_cast<std::size_t>(subset[j])][sel[j]];
          if (h.source.distance(u, v) != h.target.distance(subset[i], subset[j])) iso = false;
        }
      }
      if (iso) return true;
      std::size_t k = m;
      while (k > 0 && ++sel[k - 1] == fiber_of[static_cast<std::size_t>(subset[k - 1])].size()) {
        sel[--k] = 0;
      }
      if (k == 0) return false;
    }
  };

  std::size_t max_size = c == 0 ? 0 : std::min(c - 1, image.size());
  for (std::size_t m = 1; m <= max_size; ++m) {
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
      std::vector<int> subset(m);
      for (std::size_t i = 0; i < m; ++i) subset[i] = image[pick[i]];
      if (!subset_lifts(subset)) return false;
      // Advance to the next m-combination of the image.
      bool advanced = false;
      for (std::size_t k = m; k-- > 0;) {
        if (pick[k] < image.size() - m + k) {
          ++pick[k];
          for (std::size_t i = k + 1; i < m; ++i) pick[i] = pick[i - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return true;
}

FiniteQuantitativeAlgebra induced_subalgebra(const FiniteQuantitativeAlgebra& a,
                                             const std::vector<std::string>& elements) {
  std::set<int> keep;
  for (const auto& e : elements) keep.insert(a.require_index(e));
  std::vector<int> order(keep.begin(), keep.end());
  std::map<int, int> reindex;
  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < order.size(); ++i) {
    reindex[order[i]] = static_cast<int>(i);
    carrier.push_back(a.element(order[i]));
  }
  std::map<std::string, OpTable> ops;
  for (const auto& [name, op] : a.ops()) {
    OpTable nt;
    nt.arity = op.arity;
    std::size_t want = 1;
    for (int i = 0; i < op.arity; ++i) want *= order.size();
    nt.table.reserve(want);
    std::vector<std::size_t> idx(static_cast<std::size_t>(op.arity), 0);
    if (op.arity == 0) {
      int r = op.table[0];
      if (!reindex.count(r)) {
        throw ValidationError("subset not closed under constant '" + name + "'");
      }
      nt.table.push_back(reindex[r]);
    } else if (!order.empty()) {
      while (true) {
        std::vector<int> args;
        args.reserve(idx.size());
        for (std::size_t i : idx) args.push_back(order[i]);
        int r = a.op_apply(name, args);
        if (!reindex.count(r)) {
          throw ValidationError("subset not closed under operation '" + name + "'");
        }
        nt.table.push_back(reindex[r]);
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == order.size()) idx[--k] = 0;
        if (k == 0) break;
      }
    }
    ops[name] = std::move(nt);
  }
  std::vector<ExtRational> dist;
  dist.reserve(order.size() * order.size());
  for (int i : order) {
    for (int j : order) dist.push_back(a.distance(i, j));
  }
  return FiniteQuantitativeAlgebra(a.signature(), std::move(carrier), std::move(ops),
                                   std::move(dist));
}

FiniteQuantitativeAlgebra image_algebra(const HomomorphismWitness& h) {
  Verdict v = is_homomorphism(h);
  if (!v.ok) throw ValidationError("not a homomorphism: " + v.summary());
  std::set<std::string> img;
  for (const auto& [s, t] : h.map) {
    (void)s;
    img.insert(t);
  }
  return induced_subalgebra(h.target, std::vector<std::string>(img.begin(), img.end()));
}

std::vector<ExtRational> congruence_to_pseudometric(
    const FiniteQuantitativeAlgebra& a, const std::vector<std::vector<std::string>>& classes) {
  std::vector<int> class_of(a.size(), -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw ValidationError("empty congruence class");
    for (const auto& e : classes[c]) {
      int i = a.require_index(e);
      if (class_of[static_cast<std::size_t>(i)] != -1) {
        throw ValidationError("element '" + e + "' appears in two classes");
      }
      class_of[static_cast<std::size_t>(i)] = static_cast<int>(c);
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (class_of[i] == -1) {
      throw ValidationError("element '" + a.element(static_cast<int>(i)) +
                            "' missing from the partition");
    }
  }
  // Congruence: pointwise-related tuples must have related results.
  for (const auto& [name, op] : a.ops()) {
    std::size_t tuples = op.table.size();
    for (std::size_t p = 0; p < tuples; ++p) {
      for (std::size_t q = 0; q < tuples; ++q) {
        std::vector<int> ta = decode_tuple(p, op.arity, a.size());
        std::vector<int> tb = decode_tuple(q, op.arity, a.size());
        bool related = true;
        for (int i = 0; i < op.arity && related; ++i) {
          if (class_of[static_cast<std::size_t>(ta[static_cast<std::size_t>(i)])] !=
              class_of[static_cast<std::size_t>(tb[static_cast<std::size_t>(i)])]) {
            related = false;
          }
        }
        if (related && class_of[static_cast<std::size_t>(op.table[p])] !=
                           class_of[static_cast<std::size_t>(op.table[q])]) {
          throw ValidationError("relation is not a congruence: operation '" + name +
                                "' separates related tuples " + tuple_str(a, ta) + " and " +
                                tuple_str(a, tb));
        }
      }
    }
  }
  std::vector<ExtRational> dist(a.size() * a.size(), ExtRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      dist[i * a.size() + j] = class_of[i] == class_of[j] ? ExtRational(0) : ExtRational(1);
    }
  }
  return dist;
}

namespace {

struct EnumState {
  const Signature* sig;
  const std::vector<std::string>* carrier;
  std::vector<ExtRational> grid;
  const Budgets* budgets;
  const std::function<bool(const FiniteQuantitativeAlgebra&)>* visit;
  std::uint64_t steps = 0;
  bool stopped = false;

  std::vector<ExtRational> dist;
  std::vector<std::pair<std::string, int>> slots;  // (symbol, tuple code)
  std::map<std::string, OpTable> tables;

  void tick() {
    if (++steps > budgets->step_cap) {
      throw BudgetError("algebra enumeration exceeded the step budget");
    }
  }
};

bool metric_ok(const std::vector<ExtRational>& d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i * n + k] > d[i * n + j] + d[j * n + k]) return false;
      }
    }
  }
  return true;
}

void fill_ops(EnumState& st, std::size_t slot);

void emit(EnumState& st) {
  FiniteQuantitativeAlgebra a(*st.sig, *st.carrier, st.tables, st.dist);
  if (!(*st.visit)(a)) st.stopped = true;
}

// Backtracking fill of operation tables with incremental non-expansiveness
// checks against every already-filled tuple of the same symbol.
void fill_ops(EnumState& st, std::size_t slot) {
  if (st.stopped) return;
  if (slot == st.slots.size()) {
    emit(st);
    return;
  }
  const std::size_t n = st.carrier->size();
  const auto& [symbol, code] = st.slots[slot];
  OpTable& op = st.tables[symbol];
  std::vector<int> args = decode_tuple(static_cast<std::size_t>(code), op.arity, n);
  for (std::size_t val = 0; val < n && !st.stopped; ++val) {
    st.tick();
    bool ok = true;
    for (int prev = 0; prev < code && ok; ++prev) {
      std::vector<int> pargs = decode_tuple(static_cast<std::size_t>(prev), op.arity, n);
      ExtRational bound(0);
      for (int i = 0; i < op.arity; ++i) {
        bound = max(bound, st.dist[static_cast<std::size_t>(args[static_cast<std::size_t>(i)]) * n +
                                   static_cast<std::size_t>(pargs[static_cast<std::size_t>(i)])]);
      }
      std::size_t pv = static_cast<std::size_t>(op.table[static_cast<std::size_t>(prev)]);
      if (st.dist[val * n + pv] > bound) ok = false;
    }
    if (!ok) continue;
    op.table[static_cast<std::size_t>(code)] = static_cast<int>(val);
    fill_ops(st, slot + 1);
  }
}

void fill_dist(EnumState& st, const std::vector<std::pair<std::size_t, std::size_t>>& cells,
               std::size_t at) {
  if (st.stopped) return;
  const std::size_t n = st.carrier->size();
  if (at == cells.size()) {
    if (!metric_ok(st.dist, n)) return;
    // Reset tables and start the operation fill.
    for (auto& [name, op] : st.tables) {
      (void)name;
      std::fill(op.table.begin(), op.table.end(), 0);
    }
    if (st.slots.empty()) {
      emit(st);
    } else {
      fill_ops(st, 0);
    }
    return;
  }
  auto [i, j] = cells[at];
  for (const ExtRational& g : st.grid) {
    if (g.is_zero()) continue;  // distinct elements cannot sit at distance 0
    st.tick();
    st.dist[i * n + j] = g;
    st.dist[j * n + i] = g;
    fill_dist(st, cells, at + 1);
    if (st.stopped) return;
  }
}

}  // namespace

void enumerate_algebras(const Signature& sig, const std::vector<std::string>& carrier,
                        const std::vector<ExtRational>& grid, const Budgets& budgets,
                        const std::function<bool(const FiniteQuantitativeAlgebra&)>& visit) {
  EnumState st;
  st.sig = &sig;
  st.carrier = &carrier;
  st.budgets = &budgets;
  st.visit = &visit;
  for (const auto& g : grid) {
    if (!g.is_infinite() && g.finite().is_negative()) {
      throw ValidationError("negative value in distance grid");
    }
    bool dup = false;
    for (const auto& h : st.grid) {
      if (h == g) dup = true;
    }
    if (!dup) st.grid.push_back(g);
  }
  const std::size_t n = carrier.size();
  st.dist.assign(n * n, ExtRational(0));
  for (const auto& [name, ar] : sig.symbols()) {
    OpTable op;
    op.arity = ar;
    std::size_t want = 1;
    for (int i = 0; i < ar; ++i) want *= n;
    if (n == 0 && ar == 0) return;  // constants cannot inhabit a void carrier
    op.table.assign(want, 0);
    st.tables[name] = op;
    for (std::size_t c = 0; c < want; ++c) {
      st.slots.emplace_back(name, static_cast<int>(c));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);
  }
  fill_dist(st, cells, 0);
}

std::vector<ExtRational> countermodel_grid(const std::vector<QuantitativeEquation>& hypotheses,
                                           const QuantitativeEquation& goal, int carrier_size) {
  std::set<Rational, std::less<Rational>> bounds;
  for (const auto& h : hypotheses) bounds.insert(h.bound);
  bounds.insert(goal.bound);
  std::set<Rational, std::less<Rational>> sums;
  sums.insert(Rational(0));
  int mult = carrier_size * carrier_size;
  std::set<Rational, std::less<Rational>> frontier = sums;
  for (int m = 0; m < mult; ++m) {
    std::set<Rational, std::less<Rational>> next;
    for (const auto& s : frontier) {
      for (const auto& b : bounds) {
        Rational v = s + b;
        if (!sums.count(v)) next.insert(v);
      }
    }
    if (next.empty()) break;
    sums.insert(next.begin(), next.end());
    if (sums.size() > 512) throw BudgetError("countermodel distance grid too large");
    frontier = std::move(next);
  }
  std::vector<ExtRational> grid;
  for (const auto& s : sums) grid.push_back(ExtRational(s));
  grid.push_back(ExtRational::infinity());
  return grid;
}

TermProgram::TermProgram(const std::vector<Term>& roots, const std::vector<std::string>& vars) {
  std::map<Term, std::size_t> index;
  // Post-order insertion keeps every argument slot ahead of its user.
  std::function<std::size_t(const Term&)> compile = [&](const Term& t) -> std::size_t {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    Slot slot;
    if (t.is_variable()) {
      auto pos = std::find(vars.begin(), vars.end(), t.head());
      if (pos == vars.end()) {
        throw ValidationError("unbound variable '" + t.head() + "' in compiled term");
      }
      slot.var = static_cast<int>(pos - vars.begin());
    } else {
      slot.symbol = t.head();
      for (const Term& arg : t.args()) slot.args.push_back(compile(arg));
    }
    slots_.push_back(std::move(slot));
    std::size_t at = slots_.size() - 1;
    index[t] = at;
    return at;
  };
  for (const Term& t : roots) roots_.push_back(compile(t));
}

void TermProgram::bind(const std::map<std::string, OpTable>& ops, std::size_t carrier_size) {
  carrier_ = carrier_size;
  for (Slot& s : slots_) {
    if (s.var >= 0) continue;
    auto it = ops.find(s.symbol);
    if (it == ops.end()) throw ValidationError("unknown operation '" + s.symbol + "'");
    s.table = &it->second;
  }
}

void TermProgram::run(const int* var_values, std::vector<int>& vals) const {
  vals.resize(slots_.size());
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    const Slot& s = slots_[k];
    if (s.var >= 0) {
      vals[k] = var_values[s.var];
      continue;
    }
    std::size_t code = 0;
    for (std::size_t arg : s.args) code = code * carrier_ + static_cast<std::size_t>(vals[arg]);
    vals[k] = s.table->table[code];
  }
}

std::optional<Countermodel> search_countermodel(const Signature& sig,
                                                const std::vector<QuantitativeEquation>& hypotheses,
                                                const QuantitativeEquation& goal, int max_carrier,
                                                const Budgets& budgets) {
  for (const auto& h : hypotheses) validate_equation(sig, h);
  validate_equation(sig, goal);
  std::set<std::string> var_set;
  for (const auto& h : hypotheses) {
    auto l = variables_of(h.left);
    auto r = variables_of(h.right);
    var_set.insert(l.begin(), l.end());
    var_set.insert(r.begin(), r.end());
  }
  {
    auto l = variables_of(goal.left);
    auto r = variables_of(goal.right);
    var_set.insert(l.begin(), l.end());
    var_set.insert(r.begin(), r.end());
  }
  std::vector<std::string> vars(var_set.begin(), var_set.end());

  std::vector<Term> sides;
  for (const auto& h : hypotheses) {
    sides.push_back(h.left);
    sides.push_back(h.right);
  }
  sides.push_back(goal.left);
  sides.push_back(goal.right);
  TermProgram program(sides, vars);
  std::vector<ExtRational> hyp_bounds;
  for (const auto& h : hypotheses) hyp_bounds.push_back(ExtRational(h.bound));
  ExtRational goal_bound(goal.bound);

  static const char* kNames[] = {"a", "b", "c", "d", "e", "p", "q", "r"};
  std::optional<Countermodel> found;
  std::uint64_t steps = 0;
  std::vector<int> vals;
  for (int n = 1; n <= max_carrier && !found; ++n) {
    if (static_cast<std::size_t>(n) > sizeof(kNames) / sizeof(kNames[0])) {
      throw ValidationError("countermodel carrier limit too large");
    }
    std::vector<std::string> carrier(kNames, kNames + n);
    std::vector<ExtRational> grid = countermodel_grid(hypotheses, goal, n);
    enumerate_algebras(sig, carrier, grid, budgets, [&](const FiniteQuantitativeAlgebra& a) {
      bool keep_going = true;
      program.bind(a.ops(), a.size());
      for_each_assignment(vars, a.size(), [&](const std::vector<int>& idx) {
        if (++steps > budgets.step_cap) {
          throw BudgetError("countermodel search exceeded the step budget");
        }
        program.run(idx.data(), vals);
        for (std::size_t h = 0; h < hyp_bounds.size(); ++h) {
          if (a.distance(vals[program.root(2 * h)], vals[program.root(2 * h + 1)]) >
              hyp_bounds[h]) {
            return true;
          }
        }
        std::size_t gl = program.root(2 * hyp_bounds.size());
        std::size_t gr = program.root(2 * hyp_bounds.size() + 1);
        if (a.distance(vals[gl], vals[gr]) > goal_bound) {
          Assignment assign;
          for (std::size_t i = 0; i < vars.size(); ++i) assign[vars[i]] = a.element(idx[i]);
          found = Countermodel{a, assign};
          keep_going = false;
          return false;
        }
        return true;
      });
      return keep_going;
    });
  }
  return found;
}

}  // namespace qaw
