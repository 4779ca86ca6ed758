#include "canoma/mc_oracle.hpp"

#include "canoma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace canoma::mc {

namespace {

constexpr std::uint64_t kBlockSize = 1u << 16;
constexpr double kZ99 = 2.5758293035489004;

// Stream tags: vehicle in the high bits, condition index in the low bits.
constexpr std::uint64_t kV1Tag = 1;
constexpr std::uint64_t kV2Tag = 2;

bool holds(const noma::Condition& c, double g2) {
  return c.signal_coef * g2 > c.threshold * (c.interference_coef * g2 + c.noise);
}

// Number of the cfg.samples draws of g^2 on `link` that satisfy every
// condition in `chain`.
std::uint64_t count_hits(const noma::DecodeChain& chain, const channel::Link& link,
                         const McConfig& cfg, std::uint64_t stream_tag) {
  const std::uint64_t blocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::uint64_t> per_block(blocks, 0);

  auto run_blocks = [&](std::uint64_t first) {
    for (std::uint64_t b = first; b < blocks; b += static_cast<std::uint64_t>(cfg.workers)) {
      // Fresh distributions per block: std::gamma_distribution keeps a cached
      // normal deviate, which would otherwise leak across blocks.
      channel::GainSampler sampler(link.params, link.geom);
      RngStream stream(cfg.seed, (stream_tag << 32) | b);
      const std::uint64_t begin = b * kBlockSize;
      const std::uint64_t end = std::min(cfg.samples, begin + kBlockSize);
      std::uint64_t hits = 0;
      for (std::uint64_t i = begin; i < end; ++i) {
        const double g2 = sampler(stream);
        bool all = true;
        for (const auto& c : chain) {
          if (!holds(c, g2)) {
            all = false;
            break;
          }
        }
        hits += all ? 1 : 0;
      }
      per_block[b] = hits;
    }
  };

  if (cfg.workers == 1 || blocks == 1) {
    run_blocks(0);
  } else {
    std::vector<std::thread> threads;
    const auto n = std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), blocks);
    for (std::uint64_t w = 0; w < n; ++w) {
      threads.emplace_back(run_blocks, w);
    }
    for (auto& t : threads) {
      t.join();
    }
  }
  std::uint64_t total = 0;
  for (std::uint64_t h : per_block) {
    total += h;
  }
  return total;
}

double guarded_variance(double p, double n) {
  const double floor = 0.5 / n;
  const double q = std::clamp(p, floor, 1.0 - floor);
  return q * (1.0 - q) / n;
}

McEstimate product_of(const std::vector<double>& p, const std::vector<double>& var) {
  double product = 1.0;
  for (double v : p) {
    product *= v;
  }
  double total_var = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    double others = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != k) {
        others *= p[j];
      }
    }
    total_var += others * others * var[k];
  }
  return {product, kZ99 * std::sqrt(total_var)};
}

McPairEstimate estimate_pair(const noma::CaseChains& chains, const channel::Link& link1,
                             const channel::Link& link2, McMode mode, const McConfig& cfg) {
  McPairEstimate out;
  out.p1 = mc_chain_probability(chains.v1, link1, mode, cfg, kV1Tag);
  out.p2 = mc_chain_probability(chains.v2, link2, mode, cfg, kV2Tag);
  out.joint.estimate = out.p1.estimate * out.p2.estimate;
  const double s1 = out.p1.half_width_99 / kZ99;
  const double s2 = out.p2.half_width_99 / kZ99;
  out.joint.half_width_99 = kZ99 * std::sqrt(out.p2.estimate * out.p2.estimate * s1 * s1 +
                                             out.p1.estimate * out.p1.estimate * s2 * s2);
  return out;
}

}  // namespace

void McConfig::validate() const {
  if (samples < 1) {
    throw DomainError("Monte Carlo needs at least one sample");
  }
  if (workers < 1) {
    throw DomainError("Monte Carlo needs at least one worker");
  }
}

McMode mode_for(noma::Semantics semantics) {
  return semantics == noma::Semantics::JointEvent ? McMode::Joint : McMode::Product;
}

McEstimate mc_chain_probability(const noma::DecodeChain& chain, const channel::Link& link,
                                McMode mode, const McConfig& cfg, std::uint64_t stream_tag) {
  cfg.validate();
  if (chain.empty()) {
    throw DomainError("decode chain must hold at least one condition");
  }
  const double n = static_cast<double>(cfg.samples);
  if (mode == McMode::Joint || chain.size() == 1) {
    const double p = static_cast<double>(count_hits(chain, link, cfg, stream_tag << 8)) / n;
    return {p, kZ99 * std::sqrt(guarded_variance(p, n))};
  }
  std::vector<double> p;
  std::vector<double> var;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const double pk =
        static_cast<double>(count_hits({chain[k]}, link, cfg, (stream_tag << 8) | (k + 1))) / n;
    p.push_back(pk);
    var.push_back(guarded_variance(pk, n));
  }
  return product_of(p, var);
}

McPairEstimate mc_case(caching::CacheCase c, double alpha, const noma::FullScenario& sc,
                       const McConfig& cfg) {
  sc.validate();
  const auto chains = noma::case_chains(c, noma::branch_for(c, alpha), alpha, sc);
  return estimate_pair(chains, sc.link1(), sc.link2(), mode_for(sc.semantics), cfg);
}

McPairEstimate mc_split(const noma::SplitAllocation& alloc, const noma::SplitScenario& sc,
                        const McConfig& cfg) {
  sc.validate();
  const auto branch = alloc.alpha <= 0.5 ? noma::Branch::Low : noma::Branch::High;
  const auto chains = noma::split_chains(branch, alloc, sc);
  return estimate_pair(chains, sc.base.link1(), sc.base.link2(), mode_for(sc.base.semantics),
                       cfg);
}

}  // namespace canoma::mc
