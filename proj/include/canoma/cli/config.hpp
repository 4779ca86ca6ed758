#pragma once

#include "canoma/caching.hpp"
#include "canoma/noma_split.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace canoma::cli {

/// Malformed scenario file; the message starts with the offending key path.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Config {
  noma::SplitScenario scenario;  // scenario.base holds the full-file setup
  caching::Catalog catalog;
  noma::Averaging averaging = noma::Averaging::Full;

  const noma::FullScenario& full() const { return scenario.base; }
  noma::FullScenario& full() { return scenario.base; }
};

/// Defaults used for every key a scenario file leaves out: m = 1 and
/// omega = 2 on all hops, path-loss exponent 2, distances 1 and 0.5,
/// T = 5, cache size 1, zeta = 0.5, unit noise, gamma1 = gamma2 = 1,
/// split thresholds 0.25, SNR 10 dB.
Config default_config();

double power_from_snr_db(double snr_db, double sigma1_sq);

/// Parses a JSON scenario document. Unknown keys, wrong types and violated
/// numeric constraints raise ConfigError naming the key path.
Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);

}  // namespace canoma::cli
