// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw/report.hpp"

#include <sstream>

#include "json.hpp"

namespace qaw {

const char* status_name(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass:
      return "pass";
    case ReportStatus::CheckFailed:
      return "check-failed";
    case ReportStatus::InvalidInput:
      return "invalid-input";
    case ReportStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

void Report::add(const std::string& key, const std::string& value) {
  fields.emplace_back(key, value);
}

void Report::add(const std::string& key, long long value) {
  fields.emplace_back(key, std::to_string(value));
}

bool Report::has(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return true;
  }
  return false;
}

std::string Report::text() const {
  std::ostringstream out;
  out << "command = " << command << "\n";
  out << "status = " << status_name(status) << "\n";
  for (const auto& [key, value] : fields) {
    if (value.find('\n') == std::string::npos) {
      out << key << " = " << value << "\n";
      continue;
    }
    out << key << ":\n";
    std::istringstream lines(value);
    std::string line;
    while (std::getline(lines, line)) out << "  " << line << "\n";
  }
  return out.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["status"] = status_name(status);
  j["exit_code"] = exit_code();
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [key, value] : fields) f[key] = value;
  j["fields"] = f;
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace qaw
