#pragma once

#include <iosfwd>
#include <string>

#include "bogo/config.hpp"
#include "bogo/report.hpp"

namespace bogo {

Table cmd_spectrum(const RunConfig& cfg);
Table cmd_resonances(const RunConfig& cfg);
Table cmd_evolve(const RunConfig& cfg);
Table cmd_evolve_exact(const RunConfig& cfg);
// One row per check; meta["passed"] is the overall verdict.
Table cmd_validate(const RunConfig& cfg);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitValidation = 4;

// Runs one subcommand, writes the table to `out` in cfg.format and diagnostics to `err`.
int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace bogo
