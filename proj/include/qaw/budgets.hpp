// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_BUDGETS_HPP
#define QAW_BUDGETS_HPP

#include <cstddef>
#include <cstdint>

namespace qaw {

// Resource limits shared by every search and saturation routine.
// Everything in the tool is exhaustive at desk scale, so these are the
// only knobs that decide how far a run is allowed to go.
struct Budgets {
  int depth = 2;                       // term / universe construction depth
  int max_carrier = 2;                 // countermodel search carrier limit
  std::size_t term_cap = 4096;         // max universe size
  std::size_t carrier_cap = 4096;      // max constructed carrier (products, models)
  std::uint64_t step_cap = 50000000;   // max elementary search steps
  std::uint64_t seed = 1729;           // RNG seed for randomized suites
};

}  // namespace qaw

#endif
