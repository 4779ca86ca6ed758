#include "canoma/caching.hpp"

#include "canoma/errors.hpp"

#include <cmath>
#include <numeric>

namespace canoma::caching {

void Catalog::validate() const {
  if (num_files < 1) {
    throw DomainError("catalog needs at least one file");
  }
  if (cache_size < 0 || cache_size > num_files) {
    throw DomainError("cache size must lie in [0, num_files]");
  }
  if (!std::isfinite(zeta) || zeta < 0.0) {
    throw DomainError("Zipf skewness must be finite and nonnegative");
  }
}

std::string_view to_string(CacheCase c) {
  switch (c) {
    case CacheCase::A: return "A";
    case CacheCase::B: return "B";
    case CacheCase::C: return "C";
    case CacheCase::D: return "D";
    case CacheCase::SelfHit1: return "SelfHit1";
    case CacheCase::SelfHit2: return "SelfHit2";
    case CacheCase::SelfHitBoth: return "SelfHitBoth";
    case CacheCase::CommonRequest: return "CommonRequest";
  }
  return "?";
}

bool is_noma_case(CacheCase c) {
  return c == CacheCase::A || c == CacheCase::B || c == CacheCase::C || c == CacheCase::D;
}

double CaseDistribution::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

std::vector<double> zipf_popularity(const Catalog& catalog) {
  catalog.validate();
  std::vector<double> q(static_cast<std::size_t>(catalog.num_files));
  for (std::size_t t = 0; t < q.size(); ++t) {
    q[t] = std::pow(static_cast<double>(t + 1), -catalog.zeta);
  }
  const double norm = std::accumulate(q.begin(), q.end(), 0.0);
  for (double& v : q) {
    v /= norm;
  }
  return q;
}

std::set<int> populate_cache(const Catalog& catalog) {
  catalog.validate();
  std::set<int> cache;
  for (int t = 1; t <= catalog.cache_size; ++t) {
    cache.insert(t);
  }
  return cache;
}

CacheCase classify_case(int req1, int req2, const std::set<int>& cache1, const std::set<int>& cache2,
                        int num_files) {
  if (req1 < 1 || req2 < 1 || (num_files > 0 && (req1 > num_files || req2 > num_files))) {
    throw DomainError("request index out of range");
  }
  if (req1 == req2) {
    return CacheCase::CommonRequest;
  }
  const bool own1 = cache1.count(req1) > 0;
  const bool own2 = cache2.count(req2) > 0;
  if (own1 && own2) {
    return CacheCase::SelfHitBoth;
  }
  if (own1) {
    return CacheCase::SelfHit1;
  }
  if (own2) {
    return CacheCase::SelfHit2;
  }
  const bool v1_has_other = cache1.count(req2) > 0;
  const bool v2_has_other = cache2.count(req1) > 0;
  if (v1_has_other && v2_has_other) {
    return CacheCase::A;
  }
  if (v1_has_other) {
    return CacheCase::B;
  }
  if (v2_has_other) {
    return CacheCase::C;
  }
  return CacheCase::D;
}

CaseDistribution case_distribution(const Catalog& catalog) {
  const auto q = zipf_popularity(catalog);
  const auto cache = populate_cache(catalog);
  CaseDistribution dist;
  for (int i = 1; i <= catalog.num_files; ++i) {
    for (int j = 1; j <= catalog.num_files; ++j) {
      dist[classify_case(i, j, cache, cache, catalog.num_files)] +=
          q[static_cast<std::size_t>(i - 1)] * q[static_cast<std::size_t>(j - 1)];
    }
  }
  return dist;
}

}  // namespace canoma::caching
