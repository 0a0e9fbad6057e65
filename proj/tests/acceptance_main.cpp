// Licensed under the Apache License 2.0 (see LICENSE file).
// Runs every property suite once and prints one verdict line per suite.
// Exit status is the number of failing suites.
#include <chrono>
#include <cstdio>
#include <exception>

#include "qaw/budgets.hpp"
#include "qaw/suites.hpp"

int main() {
  qaw::Budgets budgets;
  int failures = 0;
  std::size_t index = 0;
  for (const std::string& name : qaw::suite_names()) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    qaw::SuiteResult result;
    try {
      result = qaw::run_suite(name, budgets);
      pass = result.pass;
    } catch (const std::exception& e) {
      detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("[%s] %zu %s (%lld ms)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                static_cast<long long>(ms));
    if (!pass) {
      ++failures;
      if (!detail.empty()) std::printf("       error: %s\n", detail.c_str());
      for (const auto& [key, value] : result.lines) {
        if (value.rfind("FAIL", 0) == 0) std::printf("       %s: %s\n", key.c_str(), value.c_str());
      }
    }
  }
  if (failures == 0) {
    std::printf("all %zu suites pass\n", index);
  } else {
    std::printf("%d of %zu suites fail\n", failures, index);
  }
  return failures;
}
