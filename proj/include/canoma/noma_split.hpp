#pragma once

#include "canoma/noma_full.hpp"

#include <array>

namespace canoma::noma {

/// Two-way split of each file; V1 holds F2's first part and V2 holds F1's
/// first part. gammaLJ is the threshold for part J of file L.
struct SplitScenario {
  FullScenario base;
  double gamma11 = 0.25;
  double gamma12 = 0.25;
  double gamma21 = 0.25;
  double gamma22 = 0.25;

  void validate() const;
};

/// alpha splits power between the files, beta between the two parts of each.
struct SplitAllocation {
  double alpha = 0.5;
  double beta = 0.5;

  void validate() const;
};

/// The five per-condition probabilities of a branch, in decoding order:
///   high branch: V1 part 1, V1 part 2, V2 step 1, V2 step 2, V2 step 3
///   low branch:  V2 step 1, V2 step 2, V1 step 1, V1 step 2, V1 step 3
/// v1 and v2 combine each vehicle's chain under the scenario semantics.
struct SplitProbabilities {
  std::array<double, 5> factors{};
  double v1 = 0.0;
  double v2 = 0.0;

  double objective() const { return v1 * v2; }
};

CaseChains split_chains(Branch branch, const SplitAllocation& alloc, const SplitScenario& sc);

/// Evaluates either branch at any alpha in [0, 1]; the optimizer uses this
/// to reach the shared point alpha = 0.5 from both sides.
SplitProbabilities split_on_branch(Branch branch, const SplitAllocation& alloc,
                                   const SplitScenario& sc);

/// High-power branch (alpha > 0.5); DomainError otherwise.
SplitProbabilities split_chains_high(const SplitAllocation& alloc, const SplitScenario& sc);

/// Low-power branch (alpha <= 0.5); DomainError otherwise.
SplitProbabilities split_chains_low(const SplitAllocation& alloc, const SplitScenario& sc);

/// Objective of the branch selected by alpha (ties to the low branch).
double split_objective(const SplitAllocation& alloc, const SplitScenario& sc);

}  // namespace canoma::noma
