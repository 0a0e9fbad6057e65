// Licensed under the Apache License 2.0 (see LICENSE file).
#include "qaw.h"

#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qaw/commands.hpp"
#include "qaw/dsl.hpp"
#include "qaw/report.hpp"

struct qaw_workspace {
  qaw::Workspace ws;
};

struct qaw_report {
  qaw::Report report;
  std::string text;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

}  // namespace

extern "C" {

const char* qaw_version(void) { return "1.0.0"; }

const char* qaw_last_error(void) { return g_last_error.c_str(); }

qaw_workspace* qaw_workspace_parse(const char* text) {
  if (text == nullptr) {
    set_error("null source text");
    return nullptr;
  }
  try {
    auto* h = new qaw_workspace{qaw::parse_workspace(text)};
    g_last_error.clear();
    return h;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

qaw_workspace* qaw_workspace_parse_file(const char* path) {
  if (path == nullptr) {
    set_error("null path");
    return nullptr;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    set_error(std::string("cannot open '") + path + "'");
    return nullptr;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  return qaw_workspace_parse(text.c_str());
}

void qaw_workspace_free(qaw_workspace* ws) { delete ws; }

qaw_report* qaw_command_run(qaw_workspace* ws, int argc, const char* const* argv) {
  if (argc <= 0 || argv == nullptr) {
    set_error("empty command");
    return nullptr;
  }
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 0; i < argc; ++i) {
    if (argv[i] == nullptr) {
      set_error("null argument");
      return nullptr;
    }
    args.emplace_back(argv[i]);
  }
  try {
    qaw::Workspace scratch;
    qaw::Workspace& target = ws != nullptr ? ws->ws : scratch;
    auto* h = new qaw_report{};
    h->report = qaw::run_command(target, args);
    h->text = h->report.text();
    h->json = h->report.json();
    g_last_error.clear();
    return h;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  } catch (...) {
    set_error("unknown failure");
    return nullptr;
  }
}

int qaw_report_status(const qaw_report* r) {
  return r != nullptr ? r->report.exit_code() : QAW_STATUS_INVALID_INPUT;
}

const char* qaw_report_text(const qaw_report* r) {
  return r != nullptr ? r->text.c_str() : "";
}

const char* qaw_report_json(const qaw_report* r) {
  return r != nullptr ? r->json.c_str() : "";
}

void qaw_report_free(qaw_report* r) { delete r; }

}  // extern "C"
