// Licensed under the Apache License 2.0 (see LICENSE file).
#include <cstdio>
#include <cstring>

#include "qaw.h"

namespace {

const char kUsage[] =
    "usage:\n"
    "  qaw <workspace-file> <command> [args...]\n"
    "  qaw suite <name> [flags]\n"
    "  qaw --help | --version\n"
    "\n"
    "Runs one command against the objects defined in the workspace file and\n"
    "prints its report. Suites need no workspace file. Pass --json anywhere\n"
    "after the command name to print the report as JSON instead of text.\n"
    "\n"
    "commands:\n"
    "  check-algebra A                   validate metric and operation axioms\n"
    "  check-sat A T                     check A against every axiom of T\n"
    "  check-consistent T                probe T for inconsistency\n"
    "  derive T <judgment> [--depth d] [--proof]\n"
    "  countermodel <judgment> [--max-carrier n]\n"
    "  product A B -> C\n"
    "  subalgebra A {seed...} -> B\n"
    "  canonical-model K... --vars n [--depth d] -> M\n"
    "  check-hom A B a->b ... [--c k]\n"
    "  check-reflexive A B a->b ... --c k\n"
    "  to-qfo A -> M                     algebra to threshold structure\n"
    "  to-algebra M -> A                 threshold structure to algebra\n"
    "  reduced-product M1 M2 [--filter {i...}] -> M\n"
    "  eval-horn M H\n"
    "  suite <name>                      run one property suite\n"
    "\n"
    "Budget flags --depth, --max-carrier, --term-cap, --carrier-cap,\n"
    "--step-cap and --seed are accepted by every command; the QAW_DEPTH,\n"
    "QAW_MAX_CARRIER, QAW_TERM_CAP, QAW_CARRIER_CAP, QAW_STEP_CAP and\n"
    "QAW_SEED environment variables set defaults.\n"
    "\n"
    "exit codes: 0 pass, 1 check failed, 2 invalid input, 3 budget exceeded\n";

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--help") == 0 || std::strcmp(argv[i], "-h") == 0) {
      std::fputs(kUsage, stdout);
      return 0;
    }
    if (std::strcmp(argv[i], "--version") == 0) {
      std::printf("qaw %s\n", qaw_version());
      return 0;
    }
  }
  if (argc < 2) {
    std::fputs(kUsage, stderr);
    return QAW_STATUS_INVALID_INPUT;
  }

  qaw_workspace* ws = nullptr;
  int first = 1;
  if (std::strcmp(argv[1], "suite") != 0) {
    ws = qaw_workspace_parse_file(argv[1]);
    if (ws == nullptr) {
      std::fprintf(stderr, "error: %s\n", qaw_last_error());
      return QAW_STATUS_INVALID_INPUT;
    }
    first = 2;
    if (first >= argc) {
      std::fprintf(stderr, "error: no command given\n");
      qaw_workspace_free(ws);
      return QAW_STATUS_INVALID_INPUT;
    }
  }

  int json = 0;
  for (int i = first; i < argc; ++i) {
    if (std::strcmp(argv[i], "--json") == 0) json = 1;
  }

  qaw_report* report =
      qaw_command_run(ws, argc - first, const_cast<const char* const*>(argv + first));
  if (report == nullptr) {
    std::fprintf(stderr, "error: %s\n", qaw_last_error());
    qaw_workspace_free(ws);
    return QAW_STATUS_INVALID_INPUT;
  }

  std::fputs(json ? qaw_report_json(report) : qaw_report_text(report), stdout);
  int code = qaw_report_status(report);
  qaw_report_free(report);
  qaw_workspace_free(ws);
  return code;
}
