#pragma once

// Command implementations behind the rhd executable.

#include <iosfwd>

#include "rhd/config.hpp"
#include "rhd/output.hpp"

namespace rhd::app {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kValidation = 2,
  kPcpFailure = 3,
  kRecoveryFailure = 4,
};

/// Library errors -> exit code. Unclassified failures (I/O included) give 1.
int exit_code_for(const std::exception& e) noexcept;

/// Each command prints its report to `out`, writes the files the config asks
/// for and returns the report. Library errors propagate.
Report run(const RunConfig& cfg, std::ostream& out);
Report converge(const RunConfig& cfg, std::ostream& out);
/// Exit status: 0 all suites pass, 3 a set or vertex-solver suite fails,
/// 4 only the recovery round trip fails.
int verify(const RunConfig& cfg, std::ostream& out, Report* report = nullptr);
Report compare_symmetry(const RunConfig& cfg, std::ostream& out);

/// Full command line handling with the exit code contract.
int execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rhd::app
