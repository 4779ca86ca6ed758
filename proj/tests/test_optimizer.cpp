#include "canoma/errors.hpp"
#include "canoma/optimizer.hpp"

#include "oracles.hpp"
#include "scenarios.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace canoma::opt;
using canoma::caching::CacheCase;
using canoma::noma::Branch;

constexpr std::array<CacheCase, 4> kCases{CacheCase::A, CacheCase::B, CacheCase::C, CacheCase::D};

TEST(Golden, Quadratic) {
  const auto r = maximize_1d([](double a) { return -(a - 0.3) * (a - 0.3); }, 0.0, 1.0);
  EXPECT_NEAR(r.alpha, 0.3, 1e-6);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_GT(r.evaluations, 2);
}

TEST(Golden, Constant) {
  const auto r = maximize_1d([](double) { return 0.42; }, 0.2, 0.9);
  EXPECT_EQ(r.value, 0.42);
  EXPECT_GE(r.alpha, 0.2);
  EXPECT_LE(r.alpha, 0.9);
}

TEST(Golden, EndpointMaximum) {
  const auto r = maximize_1d([](double a) { return a; }, 0.0, 1.0);
  EXPECT_EQ(r.alpha, 1.0);
  EXPECT_EQ(r.value, 1.0);
}

TEST(Golden, RandomConcaveQuadratics) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double center = -0.5 + 2.0 * u(rng);
    const double curv = 0.1 + 10.0 * u(rng);
    const double offset = u(rng);
    const auto f = [&](double x) { return offset - curv * (x - center) * (x - center); };
    double grid_best = -1e300;
    for (double x : oracle::grid(0.0, 1.0, 100001)) {
      grid_best = std::max(grid_best, f(x));
    }
    const auto r = maximize_1d(f, 0.0, 1.0);
    EXPECT_NEAR(r.value, grid_best, 1e-6) << center << ' ' << curv;
    EXPECT_GE(r.value, grid_best - 1e-9);
  }
}

TEST(Golden, SeededSearchFindsPeakPastFlatZero) {
  const auto f = [](double x) { return x < 0.8 ? 0.0 : (x - 0.8) * (0.95 - x); };
  GoldenOptions options;
  options.seed_points = 21;
  const auto r = maximize_1d(f, 0.0, 1.0, options);
  EXPECT_NEAR(r.alpha, 0.875, 1e-5);
}

TEST(Golden, RejectsNonFinite) {
  EXPECT_THROW(maximize_1d([](double) { return std::nan(""); }, 0.0, 1.0),
               canoma::EvaluationError);
}

TEST(CaseOptimizer, CaseAMatchesDenseGrid) {
  const auto sc = scenarios::table();
  double best = -1.0;
  double best_alpha = 0.0;
  for (double a : oracle::grid(0.0, 1.0, 10001)) {
    const double v = canoma::noma::success_case_a(a, sc).joint();
    if (v > best) {
      best = v;
      best_alpha = a;
    }
  }
  const auto r = optimize_case(CacheCase::A, sc);
  EXPECT_NEAR(r.alpha, best_alpha, 1e-3);
  EXPECT_GE(r.value, best - 1e-9);
  EXPECT_EQ(r.branch, Branch::Full);
}

TEST(CaseOptimizer, SymmetricCaseAIsBalanced) {
  const auto r = optimize_case(CacheCase::A, scenarios::symmetric());
  EXPECT_NEAR(r.alpha, 0.5, 1e-3);
}

TEST(CaseOptimizer, BranchIntervals) {
  auto sc = scenarios::table();
  EXPECT_DOUBLE_EQ(branch_interval(CacheCase::B, Branch::High, sc).lo, 0.5);
  EXPECT_DOUBLE_EQ(branch_interval(CacheCase::B, Branch::High, sc).hi, 1.0);
  EXPECT_DOUBLE_EQ(branch_interval(CacheCase::B, Branch::Low, sc).hi, 0.5);
  sc.gamma1 = 3.0;
  sc.gamma2 = 3.0;
  EXPECT_DOUBLE_EQ(branch_interval(CacheCase::D, Branch::High, sc).lo, 0.75);
  EXPECT_DOUBLE_EQ(branch_interval(CacheCase::D, Branch::Low, sc).hi, 0.25);
  EXPECT_DOUBLE_EQ(branch_interval(CacheCase::A, Branch::Full, sc).lo, 0.0);
  EXPECT_DOUBLE_EQ(branch_interval(CacheCase::A, Branch::Full, sc).hi, 1.0);
}

TEST(CaseOptimizer, NotBelowGridOracle) {
  for (auto sem : {canoma::noma::Semantics::PaperProduct, canoma::noma::Semantics::JointEvent}) {
    auto sc = scenarios::table();
    sc.semantics = sem;
    for (CacheCase c : kCases) {
      double best = 0.0;
      for (double a : oracle::grid(0.0, 1.0, 1001)) {
        best = std::max(best, canoma::noma::success_case(c, a, sc).joint());
      }
      const auto r = optimize_case(c, sc);
      EXPECT_GE(r.value, best - 1e-4) << canoma::caching::to_string(c);
      EXPECT_NEAR(canoma::noma::success_on_branch(c, r.branch, r.alpha, sc).joint(), r.value,
                  1e-15);
    }
  }
}

TEST(CaseOptimizer, StableUnderFinerSeedGrid) {
  const auto sc = scenarios::table();
  for (CacheCase c : kCases) {
    const auto coarse = optimize_case(c, sc, 21);
    const auto fine = optimize_case(c, sc, 41);
    EXPECT_NEAR(coarse.value, fine.value, 1e-6);
    EXPECT_NEAR(coarse.alpha, fine.alpha, 1e-3);
  }
}

TEST(CaseOptimizer, CaseAScaleInvariance) {
  const auto sc = scenarios::table();
  const auto base = optimize_case(CacheCase::A, sc);
  for (double c : {0.5, 3.0}) {
    auto scaled = sc;
    scaled.power *= c;
    scaled.gamma1 *= c;
    scaled.gamma2 *= c;
    EXPECT_NEAR(optimize_case(CacheCase::A, scaled).alpha, base.alpha, 2e-6);
  }
}

TEST(CaseOptimizer, AdapterReturnsValue) {
  const auto sc = scenarios::table();
  EXPECT_EQ(case_optimizer()(CacheCase::D, sc), optimize_case(CacheCase::D, sc).value);
}

double split_grid_max(const canoma::noma::SplitScenario& sc, int n) {
  double best = 0.0;
  for (double a : oracle::grid(0.0, 1.0, n)) {
    for (double b : oracle::grid(0.0, 1.0, n)) {
      best = std::max(best, canoma::noma::split_objective({a, b}, sc));
    }
  }
  return best;
}

TEST(SplitOptimizer, NotBelowGridOracle) {
  const auto sc = scenarios::split_table();
  const auto r = optimize_split(sc);
  ASSERT_TRUE(r.beta.has_value());
  EXPECT_GE(r.value, split_grid_max(sc, 201) - 1e-4);
  EXPECT_NEAR(canoma::noma::split_on_branch(r.branch, {r.alpha, *r.beta}, sc).objective(),
              r.value, 1e-15);
}

TEST(SplitOptimizer, EachBranchStaysInItsRange) {
  const auto sc = scenarios::split_table();
  const auto low = optimize_split_branch(sc, Branch::Low);
  const auto high = optimize_split_branch(sc, Branch::High);
  EXPECT_LE(low.alpha, 0.5);
  EXPECT_GE(high.alpha, 0.5);
  EXPECT_EQ(optimize_split(sc).value, std::max(low.value, high.value));
}

TEST(SplitOptimizer, EqualSecondPartThresholdsKeepBetaInterior) {
  auto sc = scenarios::split_table();
  sc.gamma12 = sc.gamma22 = 0.5;
  const auto r = optimize_split(sc);
  ASSERT_TRUE(r.beta.has_value());
  EXPECT_LT(*r.beta, 1.0);
  EXPECT_GT(*r.beta, 0.0);
  EXPECT_GT(r.value, 0.0);
}

TEST(SplitOptimizer, SymmetricScenarioIsBalanced) {
  auto sc = scenarios::split_table();
  sc.base = scenarios::symmetric();
  const auto r = optimize_split(sc);
  EXPECT_NEAR(r.alpha, 0.5, 1e-3);
}

TEST(SplitOptimizer, SymmetricScenarioHasMirroredBranchOptima) {
  auto sc = scenarios::split_table();
  sc.base = scenarios::symmetric();
  const auto low = optimize_split_branch(sc, Branch::Low);
  const auto high = optimize_split_branch(sc, Branch::High);
  EXPECT_NEAR(low.alpha, 1.0 - high.alpha, 1e-4);
  EXPECT_NEAR(*low.beta, *high.beta, 1e-4);
  EXPECT_NEAR(low.value, high.value, 1e-9);
}

TEST(Concavity, Examples) {
  EXPECT_TRUE(check_concavity([](double x) { return -x * x; }, -1.0, 1.0, 101).concave);
  const auto cubic = check_concavity([](double x) { return x * x * x; }, -1.0, 1.0, 101);
  EXPECT_FALSE(cubic.concave);
  EXPECT_GT(cubic.worst_at, 0.0);
  EXPECT_TRUE(check_concavity([](double x) { return 2.0 * x + 1.0; }, 0.0, 1.0, 11).concave);
  EXPECT_THROW(check_concavity([](double x) { return x; }, 0.0, 1.0, 4), canoma::DomainError);
}

}  // namespace
