#pragma once

#include "gcyc/report.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gcyc::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2, kRuntimeError = 3 };

struct CommandResult {
  int exit_code = kPass;
  /// Top-level report: command, scenario_id, seed, pass, details, witnesses,
  /// timings. Null for usage errors.
  report::Json report;
  /// Text written to `out` (or to --out).
  std::string rendered;
  std::optional<std::string> trace_csv_path;
};

/// Runs one subcommand. `args` excludes the program name. Output goes to
/// `out` unless --out is given; diagnostics and help text go to `err`.
CommandResult run_command(const std::vector<std::string>& args, std::ostream& out,
                          std::ostream& err);

}  // namespace gcyc::cli
