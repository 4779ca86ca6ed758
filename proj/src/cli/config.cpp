#include "canoma/cli/config.hpp"

#include "canoma/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace canoma::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

void reject_unknown(const json& object, const std::string& path,
                    const std::set<std::string>& allowed) {
  if (!object.is_object()) {
    fail(path.empty() ? "<root>" : path, "expected an object");
  }
  for (const auto& item : object.items()) {
    if (allowed.count(item.key()) == 0) {
      fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
    }
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double read_number(const json& object, const std::string& path, const std::string& key,
                   double fallback) {
  if (!object.contains(key)) {
    return fallback;
  }
  const json& v = object.at(key);
  if (!v.is_number()) {
    fail(join(path, key), "expected a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    fail(join(path, key), "must be finite");
  }
  return x;
}

int read_int(const json& object, const std::string& path, const std::string& key, int fallback) {
  if (!object.contains(key)) {
    return fallback;
  }
  const json& v = object.at(key);
  if (!v.is_number_integer()) {
    fail(join(path, key), "expected an integer");
  }
  return v.get<int>();
}

void read_channel(const json& root, const std::string& key, channel::DoubleNakagamiParams& out) {
  if (!root.contains(key)) {
    return;
  }
  const json& c = root.at(key);
  reject_unknown(c, key, {"m1", "m2", "omega1", "omega2"});
  out.m1 = read_number(c, key, "m1", out.m1);
  out.m2 = read_number(c, key, "m2", out.m2);
  out.omega1 = read_number(c, key, "omega1", out.omega1);
  out.omega2 = read_number(c, key, "omega2", out.omega2);
  try {
    out.validate();
  } catch (const DomainError& e) {
    fail(key, e.what());
  }
}

}  // namespace

double power_from_snr_db(double snr_db, double sigma1_sq) {
  return sigma1_sq * std::pow(10.0, snr_db / 10.0);
}

Config default_config() {
  Config cfg;
  noma::FullScenario& sc = cfg.full();
  sc.sigma1_sq = 1.0;
  sc.sigma2_sq = 1.0;
  sc.power = power_from_snr_db(10.0, sc.sigma1_sq);
  sc.gamma1 = 1.0;
  sc.gamma2 = 1.0;
  sc.chan1 = {1.0, 1.0, 2.0, 2.0};
  sc.chan2 = {1.0, 1.0, 2.0, 2.0};
  sc.geom1 = {1.0, 2.0};
  sc.geom2 = {0.5, 2.0};
  sc.semantics = noma::Semantics::PaperProduct;
  cfg.scenario.gamma11 = cfg.scenario.gamma12 = cfg.scenario.gamma21 = cfg.scenario.gamma22 = 0.25;
  cfg.catalog = {5, 0.5, 1};
  cfg.averaging = noma::Averaging::Full;
  return cfg;
}

Config parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
  }
  reject_unknown(root, "",
                 {"power", "snr_db", "sigma1_sq", "sigma2_sq", "gamma1", "gamma2", "gamma_split",
                  "chan1", "chan2", "dist1", "dist2", "pathloss_exp", "catalog", "semantics",
                  "averaging"});

  Config cfg = default_config();
  noma::FullScenario& sc = cfg.full();

  sc.sigma1_sq = read_number(root, "", "sigma1_sq", sc.sigma1_sq);
  sc.sigma2_sq = read_number(root, "", "sigma2_sq", sc.sigma2_sq);
  if (!(sc.sigma1_sq > 0.0)) fail("sigma1_sq", "must be positive");
  if (!(sc.sigma2_sq > 0.0)) fail("sigma2_sq", "must be positive");

  if (root.contains("power") && root.contains("snr_db")) {
    fail("snr_db", "power and snr_db are mutually exclusive");
  }
  if (root.contains("power")) {
    sc.power = read_number(root, "", "power", sc.power);
    if (!(sc.power > 0.0)) fail("power", "must be positive");
  } else {
    sc.power = power_from_snr_db(read_number(root, "", "snr_db", 10.0), sc.sigma1_sq);
  }

  sc.gamma1 = read_number(root, "", "gamma1", sc.gamma1);
  sc.gamma2 = read_number(root, "", "gamma2", sc.gamma2);
  if (!(sc.gamma1 > 0.0)) fail("gamma1", "must be positive");
  if (!(sc.gamma2 > 0.0)) fail("gamma2", "must be positive");

  if (root.contains("gamma_split")) {
    const json& g = root.at("gamma_split");
    if (!g.is_array() || g.size() != 4) {
      fail("gamma_split", "expected an array of four thresholds");
    }
    double values[4];
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string path = "gamma_split[" + std::to_string(i) + "]";
      if (!g[i].is_number() || !(g[i].get<double>() > 0.0)) {
        fail(path, "expected a positive number");
      }
      values[i] = g[i].get<double>();
    }
    cfg.scenario.gamma11 = values[0];
    cfg.scenario.gamma12 = values[1];
    cfg.scenario.gamma21 = values[2];
    cfg.scenario.gamma22 = values[3];
  }

  read_channel(root, "chan1", sc.chan1);
  read_channel(root, "chan2", sc.chan2);

  sc.geom1.distance = read_number(root, "", "dist1", sc.geom1.distance);
  sc.geom2.distance = read_number(root, "", "dist2", sc.geom2.distance);
  const double exponent = read_number(root, "", "pathloss_exp", sc.geom1.pathloss_exp);
  sc.geom1.pathloss_exp = exponent;
  sc.geom2.pathloss_exp = exponent;
  if (!(sc.geom1.distance > 0.0)) fail("dist1", "must be positive");
  if (!(sc.geom2.distance > 0.0)) fail("dist2", "must be positive");
  if (!(exponent >= 0.0)) fail("pathloss_exp", "must be nonnegative");

  if (root.contains("catalog")) {
    const json& c = root.at("catalog");
    reject_unknown(c, "catalog", {"files", "zeta", "cache_size"});
    cfg.catalog.num_files = read_int(c, "catalog", "files", cfg.catalog.num_files);
    cfg.catalog.zeta = read_number(c, "catalog", "zeta", cfg.catalog.zeta);
    cfg.catalog.cache_size = read_int(c, "catalog", "cache_size", cfg.catalog.cache_size);
    if (cfg.catalog.num_files < 1) fail("catalog.files", "must be at least 1");
    if (cfg.catalog.zeta < 0.0) fail("catalog.zeta", "must be nonnegative");
    if (cfg.catalog.cache_size < 0 || cfg.catalog.cache_size > cfg.catalog.num_files) {
      fail("catalog.cache_size", "must lie in [0, files]");
    }
  }

  if (root.contains("semantics")) {
    const json& s = root.at("semantics");
    if (s == "paper_product") {
      sc.semantics = noma::Semantics::PaperProduct;
    } else if (s == "joint_event") {
      sc.semantics = noma::Semantics::JointEvent;
    } else {
      fail("semantics", "expected \"paper_product\" or \"joint_event\"");
    }
  }
  if (root.contains("averaging")) {
    const json& a = root.at("averaging");
    if (a == "full") {
      cfg.averaging = noma::Averaging::Full;
    } else if (a == "cases_only") {
      cfg.averaging = noma::Averaging::CasesOnly;
    } else {
      fail("averaging", "expected \"full\" or \"cases_only\"");
    }
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string() + ": cannot open scenario file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace canoma::cli
