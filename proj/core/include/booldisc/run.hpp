#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "booldisc/boolfunc.hpp"

namespace booldisc {

/// Resolved invocation of one CLI command.
struct RunConfig {
  enum class Command { Analyze, Sweep, Enumerate, Verify, Sample };
  enum class Format { Csv, Json };

  Command command = Command::Analyze;
  FuncSpec fn;
  std::string fn_text;            // descriptor as typed, echoed into reports
  std::vector<int> n_values;      // ascending
  std::vector<double> s_values;   // ascending; empty selects the command default
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  std::string out_path;           // empty writes to stdout
  Format format = Format::Csv;
  double tol = 1e-9;
};

/// 0.05 .. 0.85 in steps of 0.05, plus 0.90.
std::vector<double> default_sweep_grid();

/// {0.3, 0.5, 0.7}: the grid on which numerical residual verdicts are read.
std::vector<double> default_residual_grid();

/// Fixed 15-significant-digit float formatting shared by every emitter.
std::string format_double(double v);

/// Full report for one (f, s): strategy probabilities, affine certificate,
/// and residuals, as a JSON document.
std::string run_analyze(const RunConfig& config);

/// One CSV/JSON row per (n, s) with greedy/global/pgm columns and the family
/// closed form where one exists (and/maj/parity).
std::string run_sweep(const RunConfig& config);

/// Classifies every function at the configured n (<= 4): balance class,
/// chain verdict, counting verdict, and the greedy-global gap per grid s.
std::string run_enumerate(const RunConfig& config);

/// Monte Carlo greedy sampling report as a JSON document.
std::string run_sample(const RunConfig& config);

struct VerifyCheck {
  std::string name;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass = true;
};

/// Runs the named invariant suites of the strategy and certification layers
/// up to the configured n cap (default 4).
VerifyReport run_verify(const RunConfig& config);

std::string format_verify(const VerifyReport& report);

}  // namespace booldisc
