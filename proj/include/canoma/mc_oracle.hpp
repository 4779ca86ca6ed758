#pragma once

#include "canoma/noma_split.hpp"

#include <cstdint>

namespace canoma::mc {

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  int workers = 1;

  void validate() const;
};

/// joint:   one g^2 draw per sample, counted when every condition holds.
/// product: each condition estimated on its own sample set, then multiplied.
enum class McMode { Joint, Product };

McMode mode_for(noma::Semantics semantics);

struct McEstimate {
  double estimate = 0.0;
  double half_width_99 = 0.0;
};

/// Samples are drawn in fixed-size blocks; block k of stream `stream_tag`
/// always uses RngStream(seed, (stream_tag << 32) | k), so the estimate does
/// not depend on the worker count.
McEstimate mc_chain_probability(const noma::DecodeChain& chain, const channel::Link& link,
                                McMode mode, const McConfig& cfg, std::uint64_t stream_tag = 0);

struct McPairEstimate {
  McEstimate p1;
  McEstimate p2;
  McEstimate joint;  // p1 * p2, links drawn independently
};

McPairEstimate mc_case(caching::CacheCase c, double alpha, const noma::FullScenario& sc,
                       const McConfig& cfg);

/// Split-file objective at alpha (branch picked as in split_objective).
McPairEstimate mc_split(const noma::SplitAllocation& alloc, const noma::SplitScenario& sc,
                        const McConfig& cfg);

}  // namespace canoma::mc
