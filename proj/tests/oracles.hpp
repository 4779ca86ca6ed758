#pragma once

// Reference implementations used only by the tests. Everything here is built
// on Boost.Math and plain loops, never on the library under test.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <vector>

namespace oracle {

struct Hops {
  double m1, m2, omega1, omega2;
};

inline double bessel_k(double nu, double x) { return boost::math::cyl_bessel_k(nu, x); }

// P(g^2 > x) for m1 = m2 = 1: 2 sqrt(u) K1(2 sqrt(u)) with u = x / (omega1 omega2).
inline double survival_m1(double x, double omega1 = 1.0, double omega2 = 1.0) {
  if (x <= 0.0) {
    return 1.0;
  }
  const double r = std::sqrt(x / (omega1 * omega2));
  return 2.0 * r * bessel_k(1.0, 2.0 * r);
}

inline double cdf_m1(double x, double omega1 = 1.0, double omega2 = 1.0) {
  return 1.0 - survival_m1(x, omega1, omega2);
}

// Density of g^2 written straight from the double-Gamma law.
inline double pdf(double x, const Hops& h) {
  const double theta = h.omega1 * h.omega2 / (h.m1 * h.m2);
  const double a = 0.5 * (h.m1 + h.m2);
  const double log_c = std::log(2.0) - std::lgamma(h.m1) - std::lgamma(h.m2) - a * std::log(theta);
  return std::exp(log_c + (a - 1.0) * std::log(x)) * bessel_k(h.m1 - h.m2, 2.0 * std::sqrt(x / theta));
}

// P(g^2 > x) by Boost's exp-sinh rule on the density of g = sqrt(g^2).
inline double survival(double x, const Hops& h) {
  if (x <= 0.0) {
    return 1.0;
  }
  boost::math::quadrature::exp_sinh<double> integrator;
  const double t0 = std::sqrt(x);
  auto f = [&](double s) {
    const double t = t0 + s;
    return 2.0 * t * pdf(t * t, h);
  };
  return integrator.integrate(f, 1e-13);
}

// Shape-parameter Gamma product via Boost's incomplete gamma: for m2 = 1
// the cdf reduces to a one-dimensional integral over the first hop.
inline double survival_m2_is_1(double x, double m1, double omega1, double omega2) {
  // P(X Y > x) = E[exp(-x / (omega2 X))], X ~ Gamma(m1, omega1 / m1).
  auto f = [&](double g) {
    const double scale = omega1 / m1;
    const double dens = std::exp((m1 - 1.0) * std::log(g) - g / scale - std::lgamma(m1) -
                                 m1 * std::log(scale));
    return dens * std::exp(-x / (omega2 * g));
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 1e-13);
}

inline std::vector<double> zipf(int files, double zeta) {
  std::vector<double> q(static_cast<std::size_t>(files));
  double sum = 0.0;
  for (int t = 1; t <= files; ++t) {
    sum += std::pow(static_cast<double>(t), -zeta);
  }
  for (int t = 1; t <= files; ++t) {
    q[static_cast<std::size_t>(t - 1)] = std::pow(static_cast<double>(t), -zeta) / sum;
  }
  return q;
}

inline std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

}  // namespace oracle
