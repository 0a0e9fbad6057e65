// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_ERROR_HPP
#define QAW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qaw {

// Malformed or inconsistent input. Maps to exit code 2 at the CLI.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A configured budget (depth, term cap, step cap, carrier cap) ran out.
// Maps to exit code 3 at the CLI.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qaw

#endif
