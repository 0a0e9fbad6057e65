// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_REPORT_HPP
#define QAW_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qaw {

// Outcome of a command, doubling as the process exit code.
enum class ReportStatus : int {
  Pass = 0,
  CheckFailed = 1,
  InvalidInput = 2,
  BudgetExceeded = 3,
};

const char* status_name(ReportStatus s);

// Structured command output. Fields keep insertion order so that both the
// text and the JSON renderings are stable across runs.
struct Report {
  std::string command;
  ReportStatus status = ReportStatus::Pass;
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, long long value);
  bool has(const std::string& key) const;

  // One "key = value" line per field; multi-line values become an indented
  // block introduced by "key:".
  std::string text() const;
  std::string json() const;

  int exit_code() const { return static_cast<int>(status); }
};

// FNV-1a, used to fingerprint command inputs inside reports.
std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace qaw

#endif
