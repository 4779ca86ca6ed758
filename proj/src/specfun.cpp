#include "canoma/specfun.hpp"

#include "canoma/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace canoma::specfun {

namespace {

using Kronrod21 = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss10 = boost::math::quadrature::gauss<double, 10>;

struct Segment {
  double lo;
  double hi;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

// One 21-point Kronrod panel with the embedded 10-point Gauss estimate used
// for the error.
Segment integrate_panel(const std::function<double(double)>& f, double lo, double hi) {
  const auto& nodes = Kronrod21::abscissa();
  const auto& kw = Kronrod21::weights();
  const auto& gw = Gauss10::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double f0 = f(center);
  double kronrod = kw[0] * f0;
  double gauss = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double dx = half * nodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kw[i] * pair;
    if (i % 2 == 1) {
      gauss += gw[i / 2] * pair;
    }
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::fabs(kronrod - gauss)};
}

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    throw EvaluationError("integrand is not finite at x = " + std::to_string(x));
  }
  return v;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be strictly positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("quadrature needs at least one subdivision");
  }
}

double ln_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("ln_gamma requires a finite positive argument");
  }
  return std::lgamma(x);
}

double bessel_k(double nu, double x) {
  if (!std::isfinite(nu)) {
    throw DomainError("bessel_k order must be finite");
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_k requires x > 0");
  }
  // K_nu(x) ~ sqrt(pi / 2x) e^{-x}; beyond ~745 this is below the smallest
  // subnormal for every order the library uses.
  if (x > 745.0 && std::fabs(nu) < x) {
    return 0.0;
  }
  try {
    return std::cyl_bessel_k(std::fabs(nu), x);
  } catch (const std::underflow_error&) {
    return 0.0;
  }
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec) {
  spec.validate();
  if (std::isnan(a) || std::isnan(b) || !(a < b) || std::isinf(a)) {
    throw DomainError("adaptive_quad requires finite a < b");
  }

  std::function<double(double)> integrand;
  double lo = a;
  double hi = b;
  if (std::isinf(b)) {
    // x = a + t / (1 - t), dx = dt / (1 - t)^2
    integrand = [&f, a](double t) {
      if (t >= 1.0) {
        return 0.0;
      }
      const double u = 1.0 - t;
      const double x = a + t / u;
      const double v = f(x);
      if (v == 0.0) {
        return 0.0;
      }
      return checked(v / (u * u), x);
    };
    lo = 0.0;
    hi = 1.0;
  } else {
    integrand = [&f](double x) { return checked(f(x), x); };
  }

  std::priority_queue<Segment> heap;
  heap.push(integrate_panel(integrand, lo, hi));
  double total = heap.top().value;
  double total_error = heap.top().error;

  for (int used = 1;; ++used) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    if (total_error <= target) {
      return total;
    }
    if (used >= spec.max_subdivisions) {
      throw AccuracyError("adaptive_quad: subdivision budget exhausted", total, total_error);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Panel cannot be split further in double precision.
      throw AccuracyError("adaptive_quad: interval collapsed", total, total_error);
    }
    const Segment left = integrate_panel(integrand, worst.lo, mid);
    const Segment right = integrate_panel(integrand, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
}

}  // namespace canoma::specfun
