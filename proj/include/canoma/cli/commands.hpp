#pragma once

#include "canoma/cli/config.hpp"
#include "canoma/mc_oracle.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace canoma::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kValidationFailure = 2,
  kNumericalError = 3,
};

/// Locale-independent shortest-roundtrip formatting used for every CSV cell.
std::string format_number(double v);

// optimize ---------------------------------------------------------------

/// `selector` is one of A, B, C, D, all, split. Writes a CSV report, or a
/// JSON document when `json` is set.
void cmd_optimize(const Config& cfg, const std::string& selector, bool json, std::ostream& out);

// sweep ------------------------------------------------------------------

enum class SweepVariable { Zeta, SnrDb, CacheSize, Omega, M, NumFiles };

SweepVariable parse_sweep_variable(const std::string& name);
std::string to_string(SweepVariable v);

/// Returns `steps` evenly spaced values from `from` to `to` inclusive.
std::vector<double> linspace(double from, double to, int steps);

/// Applies one sweep value to a copy of the configuration. omega and m set
/// all four hop parameters; integer-valued variables are rounded.
Config apply_sweep_value(const Config& cfg, SweepVariable variable, double value);

struct SweepRow {
  double value = 0.0;
  double noma = 0.0;
  double oma = 0.0;
  double conventional = 0.0;
  std::optional<double> split;
};

SweepRow sweep_point(const Config& cfg, SweepVariable variable, double value, bool with_split);

/// One CSV row per value, always in input order; rows are computed on up to
/// `workers` threads.
void cmd_sweep(const Config& cfg, SweepVariable variable, const std::vector<double>& values,
               int workers, bool with_split, std::ostream& out);

// surface ----------------------------------------------------------------

/// grid x grid samples of the split objective on each branch
/// (alpha in [0, 0.5] low, [0.5, 1] high; beta in [0, 1]).
void cmd_surface(const Config& cfg, int grid, std::ostream& out);

// validate ---------------------------------------------------------------

struct ValidationCell {
  std::string kind;  // "full" or "split"
  std::string label;
  noma::Semantics semantics;
  double alpha;
  std::optional<double> beta;
  std::string quantity;  // p1, p2 or joint
  double analytic;
  double mc;
  double half_width_99;
  double tolerance;
  bool pass;
};

/// Analytic value vs Monte Carlo estimate for every case A-D on the alpha
/// grid {0.05, 0.15, ..., 0.95} and the split objective on a 5x5 (alpha,
/// beta) grid. A cell passes when |analytic - mc| <= max(0.005, 3 * CI).
std::vector<ValidationCell> run_validation(const Config& cfg, const mc::McConfig& mc_cfg,
                                           const std::vector<noma::Semantics>& semantics);

/// Writes the cells as CSV; returns true when every cell passes.
bool cmd_validate(const Config& cfg, const mc::McConfig& mc_cfg, bool all_semantics,
                  std::ostream& out);

// concavity --------------------------------------------------------------

/// Writes (case, branch, alpha, objective) rows on each branch interval and
/// one verdict line per branch to `verdicts`. `selector` is A-D or all.
/// Returns true when every branch passes the concavity check.
bool cmd_concavity(const Config& cfg, const std::string& selector, int grid, std::ostream& out,
                   std::ostream& verdicts);

}  // namespace canoma::cli
