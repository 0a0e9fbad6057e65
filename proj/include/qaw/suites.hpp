// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_SUITES_HPP
#define QAW_SUITES_HPP

#include <string>
#include <utility>
#include <vector>

#include "qaw/budgets.hpp"

namespace qaw {

// Outcome of one property suite: named check lines in a fixed order, each
// with a deterministic value string, plus the overall verdict.
struct SuiteResult {
  std::string name;
  std::vector<std::pair<std::string, std::string>> lines;
  bool pass = true;

  void check(const std::string& label, bool ok, const std::string& detail);
  void note(const std::string& label, const std::string& value);
};

std::vector<std::string> suite_names();

// Runs the named suite under the given budgets (the seed drives every
// randomized generator). Unknown names are a validation error.
SuiteResult run_suite(const std::string& name, const Budgets& budgets);

}  // namespace qaw

#endif
