#pragma once

#include "canoma/caching.hpp"
#include "canoma/channel.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace canoma::noma {

/// How conditions sharing one channel gain are combined.
///   PaperProduct: product of the marginal probabilities, as the closed forms
///                 are written.
///   JointEvent:   exact probability that the single gain clears every
///                 threshold, i.e. survival(max threshold).
enum class Semantics { PaperProduct, JointEvent };

std::string_view to_string(Semantics s);

/// Which power-ordering regime a probability is evaluated in. Case A has a
/// single formula on the whole unit interval; the other cases switch at
/// alpha = 0.5 (ties go to Low).
enum class Branch { Full, Low, High };

std::string_view to_string(Branch b);

struct FullScenario {
  double power = 10.0;
  double sigma1_sq = 1.0;
  double sigma2_sq = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  channel::DoubleNakagamiParams chan1;
  channel::DoubleNakagamiParams chan2;
  channel::LinkGeometry geom1;
  channel::LinkGeometry geom2;
  Semantics semantics = Semantics::PaperProduct;

  void validate() const;
  channel::Link link1() const { return {chan1, geom1}; }
  channel::Link link2() const { return {chan2, geom2}; }
};

/// One SINR requirement  S g^2 / (I g^2 + N) > threshold  on a shared g^2.
struct Condition {
  double signal_coef;
  double interference_coef;
  double noise;
  double threshold;
};

using DecodeChain = std::vector<Condition>;

/// The g^2 level above which S g^2 / (I g^2 + N) > gamma, or nullopt when
/// S <= gamma * I and the condition can never hold.
std::optional<double> gain_threshold(double signal_coef, double interference_coef, double noise,
                                     double threshold);

double chain_probability(const DecodeChain& chain, const channel::Link& link, Semantics semantics);

struct SuccessPair {
  double p1 = 0.0;
  double p2 = 0.0;

  double joint() const { return p1 * p2; }
};

/// Decoding chains of V1 (on link 1) and V2 (on link 2).
struct CaseChains {
  DecodeChain v1;
  DecodeChain v2;
};

Branch branch_for(caching::CacheCase c, double alpha);

/// Chains for a case evaluated on an explicit branch. Only A-D are valid.
CaseChains case_chains(caching::CacheCase c, Branch branch, double alpha, const FullScenario& sc);

SuccessPair success_on_branch(caching::CacheCase c, Branch branch, double alpha,
                              const FullScenario& sc);

SuccessPair success_case_a(double alpha, const FullScenario& sc);
SuccessPair success_case_b(double alpha, const FullScenario& sc);
SuccessPair success_case_c(double alpha, const FullScenario& sc);
SuccessPair success_case_d(double alpha, const FullScenario& sc);
SuccessPair success_case(caching::CacheCase c, double alpha, const FullScenario& sc);

/// NOMA with no cached side information; identical to case D.
SuccessPair conventional_noma_success(double alpha, const FullScenario& sc);

/// Orthogonal baseline: each vehicle gets half the resource at full power,
/// so the rate-equivalent threshold is (1 + gamma)^2 - 1.
SuccessPair oma_success(const FullScenario& sc);

/// Joint success of the tags that need no power split: a single-user link
/// for a self-hit, a full-power broadcast for a common request, 1 when both
/// vehicles already hold their files.
double degenerate_success(caching::CacheCase c, const FullScenario& sc);

/// full:       average over every request pair.
/// cases_only: condition on the two vehicles asking for different files.
enum class Averaging { Full, CasesOnly };

std::string_view to_string(Averaging a);

/// Optimized joint success p1 * p2 of one of the cases A-D.
using CaseOptimizer = std::function<double(caching::CacheCase, const FullScenario&)>;

double average_success(const FullScenario& sc, const caching::Catalog& catalog,
                       const CaseOptimizer& optimizer, Averaging averaging = Averaging::Full);

double average_oma_success(const FullScenario& sc, const caching::Catalog& catalog,
                           Averaging averaging = Averaging::Full);

/// Average success of conventional NOMA: every distinct request pair is
/// served as case D.
double average_conventional_success(const FullScenario& sc, const caching::Catalog& catalog,
                                    const CaseOptimizer& optimizer,
                                    Averaging averaging = Averaging::Full);

}  // namespace canoma::noma
