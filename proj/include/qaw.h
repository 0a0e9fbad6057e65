/* Licensed under the Apache License 2.0 (see LICENSE file). */
#ifndef QAW_H
#define QAW_H

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handles. Create with the parse / run functions below, release with
 * the matching free function. Handles are independent: a report outlives the
 * workspace it was produced from. */
typedef struct qaw_workspace qaw_workspace;
typedef struct qaw_report qaw_report;

/* Report status values. They double as process exit codes. */
enum {
  QAW_STATUS_PASS = 0,
  QAW_STATUS_CHECK_FAILED = 1,
  QAW_STATUS_INVALID_INPUT = 2,
  QAW_STATUS_BUDGET_EXCEEDED = 3
};

const char* qaw_version(void);

/* Message from the most recent failing call on this thread, or "" after a
 * success. The pointer stays valid until the next call on the same thread. */
const char* qaw_last_error(void);

/* Parses source text into a workspace. Returns NULL on parse errors with the
 * position-annotated message available from qaw_last_error(). */
qaw_workspace* qaw_workspace_parse(const char* text);

/* Reads the file at path and parses it. */
qaw_workspace* qaw_workspace_parse_file(const char* path);

void qaw_workspace_free(qaw_workspace* ws);

/* Runs one command. argv holds the command name followed by its arguments,
 * one token per entry, flags included; argc counts the entries. ws may be
 * NULL for commands that reference no named objects (a fresh empty workspace
 * is used). A trailing "->" "Name" pair stores the result in ws.
 *
 * Command-level failures (invalid input, failed checks, exhausted budgets)
 * do not return NULL; they are reported through the report status. NULL is
 * returned only for malformed calls (argc <= 0, NULL entries) or allocation
 * failure, with the cause in qaw_last_error(). */
qaw_report* qaw_command_run(qaw_workspace* ws, int argc, const char* const* argv);

/* One of the QAW_STATUS_ values. */
int qaw_report_status(const qaw_report* r);

/* Rendered report, as plain text or as a JSON document. The returned
 * pointers stay valid until the report is freed. */
const char* qaw_report_text(const qaw_report* r);
const char* qaw_report_json(const qaw_report* r);

void qaw_report_free(qaw_report* r);

#ifdef __cplusplus
}
#endif

#endif
