#pragma once

#include "canoma/rng.hpp"
#include "canoma/specfun.hpp"

#include <random>

namespace canoma::channel {

/// Cascaded (double) Nakagami-m description of one BS-vehicle link: two
/// independent hops with shapes m1, m2 and mean powers omega1, omega2.
struct DoubleNakagamiParams {
  double m1 = 1.0;
  double m2 = 1.0;
  double omega1 = 1.0;
  double omega2 = 1.0;

  void validate() const;
};

struct LinkGeometry {
  double distance = 1.0;
  double pathloss_exp = 0.0;

  void validate() const;
};

/// distance^(-pathloss_exp): the multiplicative scale applied to g^2.
double effective_scale(const DoubleNakagamiParams& params, const LinkGeometry& geom);

/// Double-Gamma density of g^2 (no path loss), x > 0.
double pdf_gain_sq(double x, const DoubleNakagamiParams& params);

/// P(g^2 <= x), by adaptive quadrature of the density after the substitution
/// g^2 = t^2, which removes the endpoint singularity when m1 + m2 <= 2.
double cdf_gain_sq(double x, const DoubleNakagamiParams& params,
                   const specfun::QuadratureSpec& spec = {});

/// P(g^2 > x). Once the CDF passes 1 - 1e-4 the upper tail is integrated
/// directly instead of taking the complement.
double survival_gain_sq(double x, const DoubleNakagamiParams& params,
                        const specfun::QuadratureSpec& spec = {});

/// Draws s * X * Y with X ~ Gamma(m1, omega1/m1), Y ~ Gamma(m2, omega2/m2).
class GainSampler {
public:
  GainSampler(const DoubleNakagamiParams& params, const LinkGeometry& geom);

  double operator()(RngStream& stream) {
    return scale_ * first_(stream.engine()) * second_(stream.engine());
  }

private:
  std::gamma_distribution<double> first_;
  std::gamma_distribution<double> second_;
  double scale_;
};

double sample_gain_sq(const DoubleNakagamiParams& params, const LinkGeometry& geom,
                      RngStream& stream);

/// A link with its path loss folded in; thresholds are on the received g^2.
struct Link {
  DoubleNakagamiParams params;
  LinkGeometry geom;

  double scale() const { return effective_scale(params, geom); }
  double survival(double threshold) const;
  double cdf(double threshold) const;
};

}  // namespace canoma::channel
