#include "canoma/noma_full.hpp"

#include "canoma/errors.hpp"

#include <algorithm>
#include <cmath>

namespace canoma::noma {

using caching::CacheCase;

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("power fraction alpha must lie in [0, 1]");
  }
}

// Masses of each tag after applying the averaging mode.
caching::CaseDistribution weights(const caching::Catalog& catalog, Averaging averaging) {
  auto dist = caching::case_distribution(catalog);
  if (averaging == Averaging::CasesOnly) {
    const double common = dist[CacheCase::CommonRequest];
    const double rest = 1.0 - common;
    if (!(rest > 0.0)) {
      throw DomainError("cases_only averaging needs at least two files");
    }
    dist[CacheCase::CommonRequest] = 0.0;
    for (CacheCase c : caching::kAllCases) {
      dist[c] /= rest;
    }
  }
  return dist;
}

}  // namespace

std::string_view to_string(Semantics s) {
  return s == Semantics::PaperProduct ? "paper_product" : "joint_event";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Full: return "full";
    case Branch::Low: return "low";
    case Branch::High: return "high";
  }
  return "?";
}

std::string_view to_string(Averaging a) { return a == Averaging::Full ? "full" : "cases_only"; }

void FullScenario::validate() const {
  const bool ok = power > 0.0 && sigma1_sq > 0.0 && sigma2_sq > 0.0 && gamma1 > 0.0 &&
                  gamma2 > 0.0 && std::isfinite(power) && std::isfinite(sigma1_sq) &&
                  std::isfinite(sigma2_sq) && std::isfinite(gamma1) && std::isfinite(gamma2);
  if (!ok) {
    throw DomainError("scenario needs finite positive power, noise variances and thresholds");
  }
  chan1.validate();
  chan2.validate();
  geom1.validate();
  geom2.validate();
}

std::optional<double> gain_threshold(double signal_coef, double interference_coef, double noise,
                                     double threshold) {
  const double margin = signal_coef - threshold * interference_coef;
  if (!(margin > 0.0)) {
    return std::nullopt;
  }
  return threshold * noise / margin;
}

double chain_probability(const DecodeChain& chain, const channel::Link& link,
                         Semantics semantics) {
  if (chain.empty()) {
    throw DomainError("decode chain must hold at least one condition");
  }
  std::vector<double> levels;
  levels.reserve(chain.size());
  for (const Condition& c : chain) {
    const auto level = gain_threshold(c.signal_coef, c.interference_coef, c.noise, c.threshold);
    if (!level) {
      return 0.0;
    }
    levels.push_back(*level);
  }
  if (semantics == Semantics::JointEvent) {
    return link.survival(*std::max_element(levels.begin(), levels.end()));
  }
  double p = 1.0;
  for (double level : levels) {
    p *= link.survival(level);
  }
  return p;
}

Branch branch_for(CacheCase c, double alpha) {
  if (c == CacheCase::A) {
    return Branch::Full;
  }
  return alpha <= 0.5 ? Branch::Low : Branch::High;
}

CaseChains case_chains(CacheCase c, Branch branch, double alpha, const FullScenario& sc) {
  check_alpha(alpha);
  const double strong = alpha * sc.power;           // power on F1
  const double weak = (1.0 - alpha) * sc.power;     // power on F2
  const double n1 = sc.sigma1_sq;
  const double n2 = sc.sigma2_sq;
  const double g1 = sc.gamma1;
  const double g2 = sc.gamma2;

  // Interference-free decodes, used once the other file is known.
  const Condition f1_clean_at_v1{strong, 0.0, n1, g1};
  const Condition f2_clean_at_v2{weak, 0.0, n2, g2};
  // F1 decoded under F2 interference, and F2 under F1 interference.
  const Condition f1_at_v1{strong, weak, n1, g1};
  const Condition f1_at_v2{strong, weak, n2, g1};
  const Condition f2_at_v1{weak, strong, n1, g2};
  const Condition f2_at_v2{weak, strong, n2, g2};

  switch (c) {
    case CacheCase::A:
      return {{f1_clean_at_v1}, {f2_clean_at_v2}};
    case CacheCase::B:
      if (branch == Branch::High) {
        return {{f1_clean_at_v1}, {f1_at_v2, f2_clean_at_v2}};
      }
      return {{f1_clean_at_v1}, {f2_at_v2}};
    case CacheCase::C:
      if (branch == Branch::High) {
        return {{f1_at_v1}, {f2_clean_at_v2}};
      }
      return {{f2_at_v1, f1_clean_at_v1}, {f2_clean_at_v2}};
    case CacheCase::D:
      if (branch == Branch::High) {
        return {{f1_at_v1}, {f1_at_v2, f2_clean_at_v2}};
      }
      return {{f2_at_v1, f1_clean_at_v1}, {f2_at_v2}};
    default:
      throw DomainError("decode chains exist only for cases A-D");
  }
}

SuccessPair success_on_branch(CacheCase c, Branch branch, double alpha, const FullScenario& sc) {
  const CaseChains chains = case_chains(c, branch, alpha, sc);
  return {chain_probability(chains.v1, sc.link1(), sc.semantics),
          chain_probability(chains.v2, sc.link2(), sc.semantics)};
}

SuccessPair success_case(CacheCase c, double alpha, const FullScenario& sc) {
  check_alpha(alpha);
  return success_on_branch(c, branch_for(c, alpha), alpha, sc);
}

SuccessPair success_case_a(double alpha, const FullScenario& sc) {
  return success_case(CacheCase::A, alpha, sc);
}

SuccessPair success_case_b(double alpha, const FullScenario& sc) {
  return success_case(CacheCase::B, alpha, sc);
}

SuccessPair success_case_c(double alpha, const FullScenario& sc) {
  return success_case(CacheCase::C, alpha, sc);
}

SuccessPair success_case_d(double alpha, const FullScenario& sc) {
  return success_case(CacheCase::D, alpha, sc);
}

SuccessPair conventional_noma_success(double alpha, const FullScenario& sc) {
  return success_case_d(alpha, sc);
}

SuccessPair oma_success(const FullScenario& sc) {
  const double g1 = (1.0 + sc.gamma1) * (1.0 + sc.gamma1) - 1.0;
  const double g2 = (1.0 + sc.gamma2) * (1.0 + sc.gamma2) - 1.0;
  return {sc.link1().survival(g1 * sc.sigma1_sq / sc.power),
          sc.link2().survival(g2 * sc.sigma2_sq / sc.power)};
}

double degenerate_success(CacheCase c, const FullScenario& sc) {
  switch (c) {
    case CacheCase::SelfHit1:
      return sc.link2().survival(sc.gamma2 * sc.sigma2_sq / sc.power);
    case CacheCase::SelfHit2:
      return sc.link1().survival(sc.gamma1 * sc.sigma1_sq / sc.power);
    case CacheCase::SelfHitBoth:
      return 1.0;
    case CacheCase::CommonRequest:
      return sc.link1().survival(sc.gamma1 * sc.sigma1_sq / sc.power) *
             sc.link2().survival(sc.gamma1 * sc.sigma2_sq / sc.power);
    default:
      throw DomainError("cases A-D depend on the power split");
  }
}

double average_success(const FullScenario& sc, const caching::Catalog& catalog,
                       const CaseOptimizer& optimizer, Averaging averaging) {
  sc.validate();
  const auto w = weights(catalog, averaging);
  double total = 0.0;
  for (CacheCase c : caching::kAllCases) {
    if (w[c] == 0.0) {
      continue;
    }
    const double value = caching::is_noma_case(c) ? optimizer(c, sc) : degenerate_success(c, sc);
    total += w[c] * value;
  }
  return total;
}

double average_oma_success(const FullScenario& sc, const caching::Catalog& catalog,
                           Averaging averaging) {
  sc.validate();
  const auto w = weights(catalog, averaging);
  const double orthogonal = oma_success(sc).joint();
  double total = 0.0;
  for (CacheCase c : caching::kAllCases) {
    if (w[c] == 0.0) {
      continue;
    }
    total += w[c] * (caching::is_noma_case(c) ? orthogonal : degenerate_success(c, sc));
  }
  return total;
}

double average_conventional_success(const FullScenario& sc, const caching::Catalog& catalog,
                                    const CaseOptimizer& optimizer, Averaging averaging) {
  sc.validate();
  const auto q = caching::zipf_popularity(catalog);
  double distinct = 0.0;
  double common = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      (i == j ? common : distinct) += q[i] * q[j];
    }
  }
  if (averaging == Averaging::CasesOnly) {
    if (!(distinct > 0.0)) {
      throw DomainError("cases_only averaging needs at least two files");
    }
    return optimizer(CacheCase::D, sc);
  }
  double total = 0.0;
  if (distinct > 0.0) {
    total += distinct * optimizer(CacheCase::D, sc);
  }
  if (common > 0.0) {
    total += common * degenerate_success(CacheCase::CommonRequest, sc);
  }
  return total;
}

}  // namespace canoma::noma
