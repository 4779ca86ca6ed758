#pragma once

#include "canoma/noma_split.hpp"

#include <functional>
#include <optional>

namespace canoma::opt {

struct OptResult {
  double alpha = 0.0;
  std::optional<double> beta;  // set for split optimizations
  double value = 0.0;
  int evaluations = 0;
  noma::Branch branch = noma::Branch::Full;
};

struct GoldenOptions {
  double tol = 1e-6;
  int max_iterations = 200;
  // When >= 3, a uniform grid of this many points picks the bracket that the
  // golden-section search then refines. Objectives that vanish on part of
  // their interval need this; plain golden section cannot see past a flat
  // zero region.
  int seed_points = 0;
};

/// Maximizes f on [lo, hi] by golden-section search (endpoints included).
/// Throws EvaluationError on a non-finite objective value.
OptResult maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                      const GoldenOptions& options = {});

/// Search interval of one branch of a case, per the feasibility conditions
/// alpha >= gamma1/(1+gamma1) (high) and alpha <= 1/(1+gamma2) (low),
/// intersected with the branch's own range.
struct Interval {
  double lo;
  double hi;
};

Interval branch_interval(caching::CacheCase c, noma::Branch branch, const noma::FullScenario& sc);

/// Maximizes p1 * p2 for case A-D; B, C and D search both branches and keep
/// the better one.
OptResult optimize_case(caching::CacheCase c, const noma::FullScenario& sc, int seed_points = 21);

/// Adapter for noma::average_success.
noma::CaseOptimizer case_optimizer(int seed_points = 21);

struct SplitOptions {
  double tol = 1e-6;
  int coarse_grid = 21;
  int max_sweeps = 100;
};

/// Joint (alpha, beta) maximization of the split objective, run separately on
/// alpha in [0, 0.5] (low) and [0.5, 1] (high). Each branch starts from the
/// best point of a coarse grid and alternates golden-section line searches in
/// alpha and beta until a full sweep improves the objective by less than tol.
OptResult optimize_split(const noma::SplitScenario& sc, const SplitOptions& options = {});

/// Same as optimize_split restricted to one branch.
OptResult optimize_split_branch(const noma::SplitScenario& sc, noma::Branch branch,
                                const SplitOptions& options = {});

struct ConcavityReport {
  bool concave = true;
  double worst_second_difference = 0.0;
  double worst_at = 0.0;
};

/// Centered second differences f(x-h) - 2 f(x) + f(x+h) on a uniform grid of
/// grid_n points over [lo, hi]; concave iff every one is <= tol.
ConcavityReport check_concavity(const std::function<double(double)>& f, double lo, double hi,
                                int grid_n, double tol = 1e-6);

}  // namespace canoma::opt
