#include "canoma/noma_split.hpp"

#include "canoma/errors.hpp"

#include <cmath>

namespace canoma::noma {

void SplitScenario::validate() const {
  base.validate();
  for (double g : {gamma11, gamma12, gamma21, gamma22}) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw DomainError("sub-file thresholds must be positive");
    }
  }
}

void SplitAllocation::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("split allocation needs alpha and beta in [0, 1]");
  }
}

CaseChains split_chains(Branch branch, const SplitAllocation& alloc, const SplitScenario& sc) {
  alloc.validate();
  const double p = sc.base.power;
  const double a = alloc.alpha;
  const double b = alloc.beta;
  const double n1 = sc.base.sigma1_sq;
  const double n2 = sc.base.sigma2_sq;

  if (branch == Branch::High) {
    // V1 (far) reads both parts of F1; V2 (near) cancels F1's second part
    // before its own two parts.
    DecodeChain v1{{a * b * p, (1 - b) * p, n1, sc.gamma11},
                   {a * (1 - b) * p, (1 - a) * (1 - b) * p, n1, sc.gamma12}};
    DecodeChain v2{{a * (1 - b) * p, (1 - a) * p, n2, sc.gamma12},
                   {b * (1 - a) * p, (1 - a) * (1 - b) * p, n2, sc.gamma21},
                   {(1 - b) * (1 - a) * p, 0.0, n2, sc.gamma22}};
    return {std::move(v1), std::move(v2)};
  }
  if (branch == Branch::Low) {
    DecodeChain v2{{(1 - a) * b * p, (1 - b) * p, n2, sc.gamma21},
                   {(1 - a) * (1 - b) * p, a * (1 - b) * p, n2, sc.gamma22}};
    DecodeChain v1{{(1 - a) * (1 - b) * p, a * p, n1, sc.gamma22},
                   {a * b * p, a * (1 - b) * p, n1, sc.gamma11},
                   {a * (1 - b) * p, 0.0, n1, sc.gamma12}};
    return {std::move(v1), std::move(v2)};
  }
  throw DomainError("split caching has only low and high branches");
}

SplitProbabilities split_on_branch(Branch branch, const SplitAllocation& alloc,
                                   const SplitScenario& sc) {
  const CaseChains chains = split_chains(branch, alloc, sc);
  const auto link1 = sc.base.link1();
  const auto link2 = sc.base.link2();

  SplitProbabilities out;
  const auto& first = branch == Branch::High ? chains.v1 : chains.v2;
  const auto& second = branch == Branch::High ? chains.v2 : chains.v1;
  const auto& first_link = branch == Branch::High ? link1 : link2;
  const auto& second_link = branch == Branch::High ? link2 : link1;
  std::size_t k = 0;
  for (const Condition& c : first) {
    out.factors[k++] = chain_probability({c}, first_link, Semantics::PaperProduct);
  }
  for (const Condition& c : second) {
    out.factors[k++] = chain_probability({c}, second_link, Semantics::PaperProduct);
  }

  if (sc.base.semantics == Semantics::PaperProduct) {
    const std::size_t n1 = chains.v1.size();
    double v1 = 1.0;
    double v2 = 1.0;
    for (std::size_t i = 0; i < out.factors.size(); ++i) {
      // Factor order puts the far user's chain first.
      const bool is_v1 = branch == Branch::High ? i < n1 : i >= chains.v2.size();
      (is_v1 ? v1 : v2) *= out.factors[i];
    }
    out.v1 = v1;
    out.v2 = v2;
  } else {
    out.v1 = chain_probability(chains.v1, link1, Semantics::JointEvent);
    out.v2 = chain_probability(chains.v2, link2, Semantics::JointEvent);
  }
  return out;
}

SplitProbabilities split_chains_high(const SplitAllocation& alloc, const SplitScenario& sc) {
  if (!(alloc.alpha > 0.5)) {
    throw DomainError("high split branch needs alpha > 0.5");
  }
  return split_on_branch(Branch::High, alloc, sc);
}

SplitProbabilities split_chains_low(const SplitAllocation& alloc, const SplitScenario& sc) {
  if (!(alloc.alpha <= 0.5)) {
    throw DomainError("low split branch needs alpha <= 0.5");
  }
  return split_on_branch(Branch::Low, alloc, sc);
}

double split_objective(const SplitAllocation& alloc, const SplitScenario& sc) {
  alloc.validate();
  return split_on_branch(alloc.alpha <= 0.5 ? Branch::Low : Branch::High, alloc, sc).objective();
}

}  // namespace canoma::noma
