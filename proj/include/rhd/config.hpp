#pragma once

// Run configuration: defaults, a flat `key = value` file and command-line
// flags, applied in that order (flags win). Every key is also a flag:
// `t_end` <-> `--t-end`.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhd/kernels.hpp"
#include "rhd/problems.hpp"
#include "rhd/solver.hpp"

namespace rhd {

struct RunConfig {
  std::string command = "run";  ///< run | converge | verify | compare-symmetry

  std::string problem = "sine";
  std::optional<int> nx;  ///< unset: the problem's default grid
  std::optional<int> ny;
  double cfl = 0.45;
  double alpha = 2.0;
  SolverMode mode = SolverMode::multidimensional;
  DtRule dt_rule = DtRule::signal;
  InitSampling init = InitSampling::average;
  std::optional<double> t_end;  ///< unset: the problem's end time
  std::vector<double> snapshots;
  std::int64_t max_steps = -1;
  bool pcp_audit = true;
  std::string kernels = "auto";  ///< auto | scalar | avx2

  std::string output_dir = "output";
  bool emit_field = true;
  bool emit_cuts = false;
  bool emit_report = true;
  bool emit_schlieren = false;

  std::vector<int> n_list;  ///< converge; unset: problem default series
  std::int64_t samples = 100000;
  std::uint64_t seed = 12345;
  std::vector<std::string> suites;  ///< verify; empty: all

  SolverConfig solver_config() const;

  /// Resolved grid size and end time for `spec`.
  int grid_nx(const ProblemSpec& spec) const;
  int grid_ny(const ProblemSpec& spec) const;
  double end_time(const ProblemSpec& spec) const;
  std::vector<int> series(const ProblemSpec& spec) const;

  /// Fail-fast validation of every field; ConfigError naming the offending key.
  void validate() const;
};

/// Default grid of a named problem (jets follow their domain aspect ratio).
int default_nx(const ProblemSpec& spec);
int default_ny(const ProblemSpec& spec);

/// Keys accepted in files and as flags.
const std::vector<std::string>& config_keys();
/// Keys meaningful for one command; flags for other keys are not offered.
std::vector<std::string> command_keys(std::string_view command);
const std::vector<std::string>& verify_suite_names();

/// Parses `value` into `cfg`. ConfigError naming the key for an unknown key or
/// malformed value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` text; `#` starts a comment, blank lines are ignored.
/// Unknown keys and malformed lines raise ConfigError with the line number.
void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view origin = "config");
void apply_config_file(RunConfig& cfg, const std::string& path);

struct Invocation {
  RunConfig config;
  /// Non-empty when --help was requested; nothing else was parsed.
  std::string help;
};

/// argv -> validated RunConfig: defaults, then `--config FILE`, then flags.
/// ConfigError on any parse or validation failure.
Invocation parse_config(int argc, const char* const* argv);

}  // namespace rhd
