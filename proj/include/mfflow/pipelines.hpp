#pragma once

#include <string>

#include "mfflow/config.hpp"
#include "mfflow/report.hpp"

namespace mfflow {

// Batch front ends; each returns a self-contained report. run_command
// dispatches on the subcommand name and never throws for module-level
// failures (they land in report.errors).
Report run_fixed_point(const RunConfig& cfg);
Report run_taylor(const RunConfig& cfg);
Report run_flow_eval(const RunConfig& cfg);
Report run_perturb(const RunConfig& cfg);
Report run_borel_cmd(const RunConfig& cfg);
Report run_certify(const RunConfig& cfg);
Report run_sweep(const RunConfig& cfg);

Report run_command(const std::string& command, const RunConfig& cfg);

}  // namespace mfflow
