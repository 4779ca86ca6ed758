#pragma once

#include <cstdint>
#include <random>

namespace canoma {

/// A random stream identified by (seed, stream index).
///
/// Each index gets an independent Mersenne Twister state derived through
/// std::seed_seq, so work split into indexed blocks reproduces the same draws
/// no matter which thread runs which block.
class RngStream {
public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_index) : engine_(make_engine(seed, stream_index)) {}

  engine_type& engine() noexcept { return engine_; }

private:
  static engine_type make_engine(std::uint64_t seed, std::uint64_t stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_index),
                      static_cast<std::uint32_t>(stream_index >> 32), 0x6e6f6d61u};
    return engine_type(seq);
  }

  engine_type engine_;
};

}  // namespace canoma
