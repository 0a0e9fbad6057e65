// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_TESTS_FIXTURES_HPP
#define QAW_TESTS_FIXTURES_HPP

#include <map>
#include <string>
#include <vector>

#include "qaw/algebra.hpp"
#include "qaw/rational.hpp"
#include "qaw/term.hpp"

namespace fixtures {

inline qaw::Signature empty_sig() { return qaw::Signature({}, {"x", "y", "z"}); }

inline qaw::Signature unary_sig() { return qaw::Signature({{"f", 1}}, {"x", "y", "z"}); }

// Carrier {a b} over the empty signature, cross distance d.
inline qaw::FiniteQuantitativeAlgebra two_point(const qaw::ExtRational& d) {
  std::vector<qaw::ExtRational> dist = {qaw::ExtRational(0), d, d, qaw::ExtRational(0)};
  return qaw::FiniteQuantitativeAlgebra(empty_sig(), {"a", "b"}, {}, dist);
}

// Carrier {a b} over {f/1}, cross distance d, f either identity or the swap.
inline qaw::FiniteQuantitativeAlgebra two_point_unary(const qaw::ExtRational& d, bool swap) {
  qaw::OpTable f;
  f.arity = 1;
  f.table = swap ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
  std::vector<qaw::ExtRational> dist = {qaw::ExtRational(0), d, d, qaw::ExtRational(0)};
  return qaw::FiniteQuantitativeAlgebra(unary_sig(), {"a", "b"}, {{"f", f}}, dist);
}

inline qaw::FiniteQuantitativeAlgebra one_point(const qaw::Signature& sig) {
  std::map<std::string, qaw::OpTable> ops;
  for (const auto& [name, arity] : sig.symbols()) {
    qaw::OpTable t;
    t.arity = arity;
    t.table.assign(1, 0);
    ops[name] = t;
  }
  return qaw::FiniteQuantitativeAlgebra(sig, {"p"}, ops, {qaw::ExtRational(0)});
}

}  // namespace fixtures

#endif
