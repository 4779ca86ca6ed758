#include "canoma/errors.hpp"
#include "canoma/noma_split.hpp"
#include "canoma/optimizer.hpp"

#include "oracles.hpp"
#include "scenarios.hpp"

#include <gtest/gtest.h>

namespace {

using namespace canoma::noma;

double s1(double thr) { return oracle::survival_m1(thr, 2.0, 2.0); }
double s2(double thr) { return oracle::survival_m1(thr / 4.0, 2.0, 2.0); }

// P(S g^2 / (I g^2 + N) > gamma) on a Table I link, from first principles.
double cond(double S, double I, double N, double gamma, bool far) {
  if (!(S > gamma * I)) {
    return 0.0;
  }
  const double thr = gamma * N / (S - gamma * I);
  return far ? s1(thr) : s2(thr);
}

struct Expected {
  std::array<double, 5> f;
  double v1;
  double v2;
};

Expected expected_high(double a, double b, double P, double g11, double g12, double g21,
                       double g22) {
  Expected e;
  e.f[0] = cond(a * b * P, (1 - b) * P, 1, g11, true);
  e.f[1] = cond(a * (1 - b) * P, (1 - a) * (1 - b) * P, 1, g12, true);
  e.f[2] = cond(a * (1 - b) * P, (1 - a) * P, 1, g12, false);
  e.f[3] = cond(b * (1 - a) * P, (1 - a) * (1 - b) * P, 1, g21, false);
  e.f[4] = cond((1 - b) * (1 - a) * P, 0, 1, g22, false);
  e.v1 = e.f[0] * e.f[1];
  e.v2 = e.f[2] * e.f[3] * e.f[4];
  return e;
}

Expected expected_low(double a, double b, double P, double g11, double g12, double g21,
                      double g22) {
  Expected e;
  e.f[0] = cond((1 - a) * b * P, (1 - b) * P, 1, g21, false);
  e.f[1] = cond((1 - a) * (1 - b) * P, a * (1 - b) * P, 1, g22, false);
  e.f[2] = cond((1 - a) * (1 - b) * P, a * P, 1, g22, true);
  e.f[3] = cond(a * b * P, a * (1 - b) * P, 1, g11, true);
  e.f[4] = cond(a * (1 - b) * P, 0, 1, g12, true);
  e.v2 = e.f[0] * e.f[1];
  e.v1 = e.f[2] * e.f[3] * e.f[4];
  return e;
}

TEST(Split, HighBranchMatchesHandDerivation) {
  auto sc = scenarios::split_table();
  sc.gamma11 = 0.2;
  sc.gamma12 = 0.3;
  sc.gamma21 = 0.15;
  sc.gamma22 = 0.35;
  for (double a : {0.55, 0.7, 0.85}) {
    for (double b : {0.2, 0.5, 0.8}) {
      const auto got = split_chains_high({a, b}, sc);
      const auto ref = expected_high(a, b, 10.0, 0.2, 0.3, 0.15, 0.35);
      for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_NEAR(got.factors[k], ref.f[k], 1e-10) << a << ' ' << b << ' ' << k;
      }
      EXPECT_NEAR(got.v1, ref.v1, 1e-10);
      EXPECT_NEAR(got.v2, ref.v2, 1e-10);
    }
  }
}

TEST(Split, LowBranchMatchesHandDerivation) {
  auto sc = scenarios::split_table();
  sc.gamma11 = 0.2;
  sc.gamma12 = 0.3;
  sc.gamma21 = 0.15;
  sc.gamma22 = 0.35;
  for (double a : {0.1, 0.3, 0.5}) {
    for (double b : {0.2, 0.5, 0.8}) {
      const auto got = split_chains_low({a, b}, sc);
      const auto ref = expected_low(a, b, 10.0, 0.2, 0.3, 0.15, 0.35);
      for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_NEAR(got.factors[k], ref.f[k], 1e-10) << a << ' ' << b << ' ' << k;
      }
      EXPECT_NEAR(got.v1, ref.v1, 1e-10);
      EXPECT_NEAR(got.v2, ref.v2, 1e-10);
    }
  }
}

TEST(Split, JointSemanticsUsesLargestThreshold) {
  auto sc = scenarios::split_table();
  sc.base.semantics = Semantics::JointEvent;
  const double a = 0.7;
  const double b = 0.6;
  const auto got = split_chains_high({a, b}, sc);
  const double P = 10.0;
  const double t1 = 0.25 / (a * b * P - 0.25 * (1 - b) * P);
  const double t2 = 0.25 / (a * (1 - b) * P - 0.25 * (1 - a) * (1 - b) * P);
  EXPECT_NEAR(got.v1, s1(std::max(t1, t2)), 1e-10);
  EXPECT_GE(got.v1, got.factors[0] * got.factors[1]);
}

TEST(Split, StarvedSubFilesGiveZero) {
  const auto sc = scenarios::split_table();
  EXPECT_EQ(split_chains_high({0.7, 1.0}, sc).factors[4], 0.0);
  EXPECT_EQ(split_chains_high({0.7, 0.0}, sc).factors[0], 0.0);
  EXPECT_EQ(split_chains_low({0.3, 1.0}, sc).factors[4], 0.0);
  for (double t : oracle::grid(0.0, 1.0, 11)) {
    EXPECT_EQ(split_objective({0.0, t}, sc), 0.0) << t;
    EXPECT_EQ(split_objective({1.0, t}, sc), 0.0) << t;
    EXPECT_EQ(split_objective({t, 0.0}, sc), 0.0) << t;
    EXPECT_EQ(split_objective({t, 1.0}, sc), 0.0) << t;
  }
}

TEST(Split, HighFirstConditionFeasibility) {
  const auto sc = scenarios::split_table();
  // alpha beta > gamma11 (1 - beta) decides whether V1 can decode part 1.
  const double b = 0.2;
  const double edge = 0.25 * (1 - b) / b;  // = 1: never reachable for beta = 0.2
  EXPECT_EQ(split_chains_high({0.9, b}, sc).factors[0], 0.0);
  EXPECT_GT(edge, 0.9);
  const double b2 = 0.5;  // edge alpha = 0.25
  EXPECT_GT(split_chains_high({0.6, b2}, sc).factors[0], 0.0);
}

TEST(Split, LowBranchAtZeroAlpha) {
  const auto sc = scenarios::split_table();
  const double b = 0.4;
  const auto p = split_on_branch(Branch::Low, {0.0, b}, sc);
  EXPECT_NEAR(p.factors[2], s1(0.25 / ((1 - b) * 10.0)), 1e-10);
}

TEST(Split, ObjectiveIsProductOfFactors) {
  const auto sc = scenarios::split_table();
  for (double a : oracle::grid(0.0, 1.0, 21)) {
    for (double b : oracle::grid(0.0, 1.0, 21)) {
      const auto branch = a <= 0.5 ? Branch::Low : Branch::High;
      const auto p = split_on_branch(branch, {a, b}, sc);
      double product = 1.0;
      double smallest = 1.0;
      for (double f : p.factors) {
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
        product *= f;
        smallest = std::min(smallest, f);
      }
      EXPECT_NEAR(p.objective(), product, 1e-15);
      EXPECT_LE(p.objective(), smallest);
      EXPECT_EQ(split_objective({a, b}, sc), p.objective());
    }
  }
}

TEST(Split, BranchGuards) {
  const auto sc = scenarios::split_table();
  EXPECT_THROW(split_chains_high({0.5, 0.5}, sc), canoma::DomainError);
  EXPECT_THROW(split_chains_low({0.51, 0.5}, sc), canoma::DomainError);
  EXPECT_NO_THROW(split_chains_low({0.5, 0.5}, sc));
  EXPECT_THROW(split_objective({1.2, 0.5}, sc), canoma::DomainError);
  EXPECT_THROW(split_objective({0.2, -0.5}, sc), canoma::DomainError);
  auto bad = sc;
  bad.gamma21 = 0.0;
  EXPECT_THROW(bad.validate(), canoma::DomainError);
}

TEST(Split, GridMaximizerIsInteriorAndUnique) {
  const auto sc = scenarios::split_table();
  for (Branch branch : {Branch::Low, Branch::High}) {
    const double lo = branch == Branch::Low ? 0.0 : 0.5;
    const auto as = oracle::grid(lo, lo + 0.5, 51);
    const auto bs = oracle::grid(0.0, 1.0, 51);
    double best = -1.0;
    std::size_t bi = 0;
    std::size_t bj = 0;
    int ties = 0;
    for (std::size_t i = 0; i < as.size(); ++i) {
      for (std::size_t j = 0; j < bs.size(); ++j) {
        const double v = split_on_branch(branch, {as[i], bs[j]}, sc).objective();
        if (v > best + 1e-12) {
          best = v;
          bi = i;
          bj = j;
          ties = 1;
        } else if (std::fabs(v - best) <= 1e-12) {
          ++ties;
        }
      }
    }
    EXPECT_EQ(ties, 1) << to_string(branch);
    EXPECT_GT(bj, 0u);
    EXPECT_LT(bj, bs.size() - 1);
    EXPECT_GT(best, 0.0);
    if (branch == Branch::High) {
      EXPECT_GT(bi, 0u);
      EXPECT_LT(bi, as.size() - 1);
    }
  }
}

TEST(Split, ConcaveAlongAxisLines) {
  const auto sc = scenarios::split_table();
  for (Branch branch : {Branch::Low, Branch::High}) {
    const double lo = branch == Branch::Low ? 0.0 : 0.5;
    double worst = -1.0;
    for (double fixed : oracle::grid(0.0, 1.0, 23)) {
      if (fixed == 0.0 || fixed == 1.0) {
        continue;
      }
      const double a_fixed = lo + 0.5 * fixed;
      const auto along_alpha = canoma::opt::check_concavity(
          [&](double a) { return split_on_branch(branch, {a, fixed}, sc).objective(); }, lo,
          lo + 0.5, 101);
      const auto along_beta = canoma::opt::check_concavity(
          [&](double b) { return split_on_branch(branch, {a_fixed, b}, sc).objective(); }, 0.0,
          1.0, 101);
      worst = std::max({worst, along_alpha.worst_second_difference,
                        along_beta.worst_second_difference});
    }
    EXPECT_LE(worst, 1e-6) << to_string(branch);
  }
}

}  // namespace
