#pragma once

#include <string>
#include <string_view>

#include "nmskit/error.hpp"
#include "nmskit/serialize.hpp"

namespace nmskit {

inline constexpr const char* kToolkitName = "nmskit";
inline constexpr const char* kToolkitVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

enum ExitCode : int { exit_verified = 0, exit_finding = 1, exit_usage = 2 };

struct RunOptions {
  bool timing = false;  // adds wall time to the report (breaks byte-identity)
};

struct CommandResult {
  int exit_code = exit_usage;
  Json report;
  std::string text;  // human-readable summary
};

/// Runs "check-axioms", "topology", "sequence" or "norms" on a JSON config.
/// Never throws: configuration problems come back as exit code 2 with an
/// error report.
CommandResult run_command(std::string_view command, const Json& config, const RunOptions& options = {});

/// Exit code for an error raised while running a command.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace nmskit
