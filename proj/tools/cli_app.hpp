#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrgxy::cli {

inline constexpr const char* kVersionLine = "# qrg-xy2d v0.1";

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kNumericalDegeneracy = 3,
};

struct RunConfig {
  std::string command;
  double gamma_min = -1.0;
  double gamma_max = 1.0;
  int points = 2001;
  std::vector<int> iterations;
  double fd_step = 1e-4;
  double tol = 1e-8;
  std::string out_path;  // empty: CSV to stdout
  int threads = 1;
  bool emit_svg = false;
};

/// 17-significant-digit decimal formatting, locale independent.
std::string format_double(double x);

/// Canonical `key=value` echo of a config; excludes the thread count so
/// output bytes do not depend on how the work was scheduled.
std::string canonical_config(const RunConfig& cfg);

/// Validates the shared invariants (range, points, iterations, step).
/// Returns an explanation for the config error, or an empty string.
std::string validate(const RunConfig& cfg);

/// Runs one subcommand; returns the process exit code. Human-readable
/// output (verify summary, warnings) goes to `human`.
int run_command(const RunConfig& cfg, std::ostream& human);

}  // namespace qrgxy::cli
