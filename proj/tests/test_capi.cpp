// Licensed under the Apache License 2.0 (see LICENSE file).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "qaw.h"

namespace {

const char kSource[] =
    "signature { f/1 }\n"
    "vars { x y }\n"
    "algebra A {\n"
    "  carrier { a b };\n"
    "  op f(a) = a;\n"
    "  op f(b) = b;\n"
    "  dist a b = 1;\n"
    "}\n";

}  // namespace

TEST_CASE("workspaces parse and free through the handle API") {
  CHECK(qaw_version() != nullptr);

  qaw_workspace* ws = qaw_workspace_parse(kSource);
  REQUIRE(ws != nullptr);
  CHECK(std::strlen(qaw_last_error()) == 0);
  qaw_workspace_free(ws);

  qaw_workspace* bad = qaw_workspace_parse("algebra ? {}");
  CHECK(bad == nullptr);
  CHECK(std::strlen(qaw_last_error()) > 0);

  CHECK(qaw_workspace_parse(nullptr) == nullptr);
  qaw_workspace_free(nullptr);
}

TEST_CASE("commands run against a workspace and report through handles") {
  qaw_workspace* ws = qaw_workspace_parse(kSource);
  REQUIRE(ws != nullptr);

  const char* argv[] = {"check-algebra", "A"};
  qaw_report* rep = qaw_command_run(ws, 2, argv);
  REQUIRE(rep != nullptr);
  CHECK(qaw_report_status(rep) == QAW_STATUS_PASS);
  std::string text = qaw_report_text(rep);
  CHECK(text.find("verdict = valid") != std::string::npos);
  std::string json = qaw_report_json(rep);
  CHECK(json.find("\"status\": \"pass\"") != std::string::npos);
  qaw_report_free(rep);

  const char* missing[] = {"check-algebra", "Nope"};
  qaw_report* rep2 = qaw_command_run(ws, 2, missing);
  REQUIRE(rep2 != nullptr);
  CHECK(qaw_report_status(rep2) == QAW_STATUS_INVALID_INPUT);
  qaw_report_free(rep2);

  const char* store[] = {"product", "A", "A", "->", "P"};
  qaw_report* rep3 = qaw_command_run(ws, 5, store);
  REQUIRE(rep3 != nullptr);
  CHECK(qaw_report_status(rep3) == QAW_STATUS_PASS);
  qaw_report_free(rep3);
  const char* reuse[] = {"check-algebra", "P"};
  qaw_report* rep4 = qaw_command_run(ws, 2, reuse);
  REQUIRE(rep4 != nullptr);
  CHECK(qaw_report_status(rep4) == QAW_STATUS_PASS);
  qaw_report_free(rep4);

  qaw_workspace_free(ws);
}

TEST_CASE("suites run without a workspace and malformed calls are rejected") {
  const char* argv[] = {"suite", "reduced-products"};
  qaw_report* rep = qaw_command_run(nullptr, 2, argv);
  REQUIRE(rep != nullptr);
  CHECK(qaw_report_status(rep) == QAW_STATUS_PASS);
  qaw_report_free(rep);

  CHECK(qaw_command_run(nullptr, 0, argv) == nullptr);
  CHECK(qaw_command_run(nullptr, 1, nullptr) == nullptr);
  const char* holed[] = {"suite", nullptr};
  CHECK(qaw_command_run(nullptr, 2, holed) == nullptr);

  CHECK(qaw_report_status(nullptr) == QAW_STATUS_INVALID_INPUT);
  CHECK(std::strcmp(qaw_report_text(nullptr), "") == 0);
  qaw_report_free(nullptr);
}
