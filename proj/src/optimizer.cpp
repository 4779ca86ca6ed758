#include "canoma/optimizer.hpp"

#include "canoma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace canoma::opt {

using caching::CacheCase;
using noma::Branch;

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

class CountingObjective {
public:
  explicit CountingObjective(const std::function<double(double)>& f) : f_(f) {}

  double operator()(double x) {
    ++count_;
    const double v = f_(x);
    if (!std::isfinite(v)) {
      throw EvaluationError("objective is not finite at " + std::to_string(x));
    }
    if (v > best_value_ || count_ == 1) {
      best_value_ = v;
      best_x_ = x;
    }
    return v;
  }

  int count() const { return count_; }
  double best_x() const { return best_x_; }
  double best_value() const { return best_value_; }

private:
  const std::function<double(double)>& f_;
  int count_ = 0;
  double best_x_ = 0.0;
  double best_value_ = 0.0;
};

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return x;
}

Interval split_alpha_range(Branch branch) {
  return branch == Branch::High ? Interval{0.5, 1.0} : Interval{0.0, 0.5};
}

}  // namespace

OptResult maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                      const GoldenOptions& options) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("maximize_1d needs a finite interval lo < hi");
  }
  if (!(options.tol > 0.0) || options.max_iterations < 1) {
    throw DomainError("maximize_1d needs tol > 0 and a positive iteration budget");
  }
  CountingObjective objective(f);
  objective(lo);
  objective(hi);

  double a = lo;
  double b = hi;
  if (options.seed_points >= 3) {
    const auto grid = uniform_grid(lo, hi, options.seed_points);
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = objective(grid[i]);
      if (i == 0 || v > best_value) {
        best_value = v;
        best = i;
      }
    }
    a = grid[best == 0 ? 0 : best - 1];
    b = grid[std::min(best + 1, grid.size() - 1)];
  }

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int it = 0; it < options.max_iterations && (b - a) > options.tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  objective(0.5 * (a + b));

  OptResult result;
  result.alpha = objective.best_x();
  result.value = objective.best_value();
  result.evaluations = objective.count();
  return result;
}

Interval branch_interval(CacheCase c, Branch branch, const noma::FullScenario& sc) {
  if (c == CacheCase::A || branch == Branch::Full) {
    return {0.0, 1.0};
  }
  if (branch == Branch::High) {
    return {std::max(0.5, sc.gamma1 / (1.0 + sc.gamma1)), 1.0};
  }
  return {0.0, std::min(0.5, 1.0 / (1.0 + sc.gamma2))};
}

OptResult optimize_case(CacheCase c, const noma::FullScenario& sc, int seed_points) {
  if (!caching::is_noma_case(c)) {
    throw DomainError("only cases A-D have a power allocation to optimize");
  }
  sc.validate();
  const GoldenOptions options{1e-6, 200, seed_points};
  const std::vector<Branch> branches =
      c == CacheCase::A ? std::vector<Branch>{Branch::Full}
                        : std::vector<Branch>{Branch::Low, Branch::High};

  OptResult best;
  int evaluations = 0;
  bool first = true;
  for (Branch branch : branches) {
    const Interval range = branch_interval(c, branch, sc);
    const std::function<double(double)> f = [&](double alpha) {
      return noma::success_on_branch(c, branch, alpha, sc).joint();
    };
    OptResult r = maximize_1d(f, range.lo, range.hi, options);
    evaluations += r.evaluations;
    r.branch = branch;
    if (first || r.value > best.value) {
      best = r;
      first = false;
    }
  }
  best.evaluations = evaluations;
  return best;
}

noma::CaseOptimizer case_optimizer(int seed_points) {
  return [seed_points](CacheCase c, const noma::FullScenario& sc) {
    return optimize_case(c, sc, seed_points).value;
  };
}

OptResult optimize_split_branch(const noma::SplitScenario& sc, Branch branch,
                                const SplitOptions& options) {
  if (branch == Branch::Full) {
    throw DomainError("split optimization runs on the low or high branch");
  }
  sc.validate();
  const Interval alpha_range = split_alpha_range(branch);
  int evaluations = 0;
  auto objective = [&](double alpha, double beta) {
    ++evaluations;
    const double v = noma::split_on_branch(branch, {alpha, beta}, sc).objective();
    if (!std::isfinite(v)) {
      throw EvaluationError("split objective is not finite");
    }
    return v;
  };

  // Coarse seed.
  const auto alphas = uniform_grid(alpha_range.lo, alpha_range.hi, options.coarse_grid);
  const auto betas = uniform_grid(0.0, 1.0, options.coarse_grid);
  double alpha = alphas.front();
  double beta = betas.front();
  double value = -1.0;
  for (double a : alphas) {
    for (double b : betas) {
      const double v = objective(a, b);
      if (v > value) {
        value = v;
        alpha = a;
        beta = b;
      }
    }
  }

  const GoldenOptions line{options.tol, 200, options.coarse_grid};
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    const double before = value;

    const std::function<double(double)> along_alpha = [&](double a) { return objective(a, beta); };
    const OptResult ra = maximize_1d(along_alpha, alpha_range.lo, alpha_range.hi, line);
    if (ra.value > value) {
      value = ra.value;
      alpha = ra.alpha;
    }

    const std::function<double(double)> along_beta = [&](double b) { return objective(alpha, b); };
    const OptResult rb = maximize_1d(along_beta, 0.0, 1.0, line);
    if (rb.value > value) {
      value = rb.value;
      beta = rb.alpha;
    }

    if (value - before < options.tol) {
      break;
    }
  }

  OptResult result;
  result.alpha = alpha;
  result.beta = beta;
  result.value = value;
  result.evaluations = evaluations;
  result.branch = branch;
  return result;
}

OptResult optimize_split(const noma::SplitScenario& sc, const SplitOptions& options) {
  OptResult low = optimize_split_branch(sc, Branch::Low, options);
  OptResult high = optimize_split_branch(sc, Branch::High, options);
  const int evaluations = low.evaluations + high.evaluations;
  OptResult best = high.value > low.value ? high : low;
  best.evaluations = evaluations;
  return best;
}

ConcavityReport check_concavity(const std::function<double(double)>& f, double lo, double hi,
                                int grid_n, double tol) {
  if (grid_n < 5) {
    throw DomainError("concavity check needs at least 5 grid points");
  }
  if (!(lo < hi)) {
    throw DomainError("concavity check needs lo < hi");
  }
  const auto x = uniform_grid(lo, hi, grid_n);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = f(x[i]);
    if (!std::isfinite(y[i])) {
      throw EvaluationError("objective is not finite at " + std::to_string(x[i]));
    }
  }
  ConcavityReport report;
  report.worst_second_difference = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double d2 = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (d2 > report.worst_second_difference) {
      report.worst_second_difference = d2;
      report.worst_at = x[i];
    }
  }
  report.concave = report.worst_second_difference <= tol;
  return report;
}

}  // namespace canoma::opt
