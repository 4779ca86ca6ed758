#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string_view>
#include <vector>

namespace canoma::caching {

struct Catalog {
  int num_files = 5;
  double zeta = 0.5;
  int cache_size = 1;

  void validate() const;
};

/// Decoding situation for one request pair. A-D follow whether each vehicle
/// holds the other's requested file; the remaining tags cover a vehicle
/// already holding its own file, and both vehicles asking for the same file.
enum class CacheCase { A, B, C, D, SelfHit1, SelfHit2, SelfHitBoth, CommonRequest };

inline constexpr std::array<CacheCase, 8> kAllCases{
    CacheCase::A,        CacheCase::B,        CacheCase::C,           CacheCase::D,
    CacheCase::SelfHit1, CacheCase::SelfHit2, CacheCase::SelfHitBoth, CacheCase::CommonRequest};

std::string_view to_string(CacheCase c);
bool is_noma_case(CacheCase c);

/// Probability mass per CacheCase, indexed by the enum value.
class CaseDistribution {
public:
  double operator[](CacheCase c) const { return mass_[static_cast<std::size_t>(c)]; }
  double& operator[](CacheCase c) { return mass_[static_cast<std::size_t>(c)]; }
  double total() const;

private:
  std::array<double, kAllCases.size()> mass_{};
};

/// Zipf popularity q_t = t^-zeta / sum_i i^-zeta, t = 1..T (element t-1).
std::vector<double> zipf_popularity(const Catalog& catalog);

/// Most-popular-first placement: files {1, ..., cache_size}.
std::set<int> populate_cache(const Catalog& catalog);

/// Classifies requests (1-based file indices) against both caches. Throws
/// DomainError for indices below 1 or above `num_files` when it is given.
CacheCase classify_case(int req1, int req2, const std::set<int>& cache1, const std::set<int>& cache2,
                        int num_files = 0);

/// Exact case probabilities for i.i.d. Zipf requests and identical
/// most-popular caches at both vehicles.
CaseDistribution case_distribution(const Catalog& catalog);

}  // namespace canoma::caching
