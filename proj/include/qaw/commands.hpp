// Licensed under the Apache License 2.0 (see LICENSE file).
#ifndef QAW_COMMANDS_HPP
#define QAW_COMMANDS_HPP

#include <string>
#include <vector>

#include "qaw/budgets.hpp"
#include "qaw/dsl.hpp"
#include "qaw/report.hpp"

namespace qaw {

// Budgets assembled from the defaults and the QAW_DEPTH, QAW_MAX_CARRIER,
// QAW_TERM_CAP, QAW_CARRIER_CAP, QAW_STEP_CAP and QAW_SEED environment
// variables. Command-line flags override both.
Budgets budgets_from_environment();

// Runs one command against the workspace. args holds the command name
// followed by its arguments, flags included; a trailing "-> Name" stores the
// result back into the workspace. Never throws: validation and budget
// failures become the report status.
Report run_command(Workspace& ws, const std::vector<std::string>& args);

}  // namespace qaw

#endif
