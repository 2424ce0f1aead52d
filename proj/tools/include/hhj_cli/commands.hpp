#pragma once

#include "hhj_cli/config.hpp"
#include "hhj_cli/report.hpp"

namespace hhj::cli {

// Each command runs with a resolved config, writes its files into
// cfg.out_dir (created if missing; nothing is written when out_dir is
// empty) and returns the report. Library errors propagate as exceptions;
// exit_code_for() maps them.

Report cmd_decompose(const RunConfig& cfg);
Report cmd_rotor(const RunConfig& cfg);
Report cmd_kg_check(const RunConfig& cfg);
Report cmd_convergence(const RunConfig& cfg);

Report run_command(const RunConfig& cfg);

/// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConvergence = 3;

/// Parse argv, run, write report.json, print the summary. Returns the exit
/// code.
int main(int argc, char** argv);

}  // namespace hhj::cli
