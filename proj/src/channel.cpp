#include "canoma/channel.hpp"

#include "canoma/errors.hpp"

#include <cmath>
#include <limits>

namespace canoma::channel {

namespace {

constexpr double kTailSwitch = 1.0 - 1e-4;

// Density of t where g^2 = t^2, i.e. 2 t f(t^2), written in log form:
//   4 t^{m1+m2-1} K_{m1-m2}(2 t / sqrt(theta)) / (Gamma(m1) Gamma(m2) theta^{(m1+m2)/2})
// with theta = omega1 omega2 / (m1 m2).
class RootDensity {
public:
  explicit RootDensity(const DoubleNakagamiParams& p)
      : order_(p.m1 - p.m2),
        power_(p.m1 + p.m2 - 1.0),
        inv_sqrt_theta_(std::sqrt(p.m1 * p.m2 / (p.omega1 * p.omega2))) {
    const double half_sum = 0.5 * (p.m1 + p.m2);
    log_norm_ = std::log(4.0) - specfun::ln_gamma(p.m1) - specfun::ln_gamma(p.m2) +
                2.0 * half_sum * std::log(inv_sqrt_theta_);
  }

  double operator()(double t) const {
    if (t <= 0.0) {
      return 0.0;
    }
    const double k = specfun::bessel_k(order_, 2.0 * t * inv_sqrt_theta_);
    if (k == 0.0) {
      return 0.0;
    }
    return std::exp(log_norm_ + power_ * std::log(t)) * k;
  }

private:
  double order_;
  double power_;
  double inv_sqrt_theta_;
  double log_norm_;
};

// A second substitution t = s^2 flattens the t log t behaviour of the root
// density at the origin (m1 = m2 = 1), which otherwise forces deep splitting.
double lower_mass(double x, const RootDensity& density, const specfun::QuadratureSpec& spec) {
  return specfun::adaptive_quad([&density](double s) { return 2.0 * s * density(s * s); }, 0.0,
                                std::sqrt(std::sqrt(x)), spec);
}

double upper_mass(double x, const RootDensity& density, const specfun::QuadratureSpec& spec) {
  return specfun::adaptive_quad(density, std::sqrt(x), std::numeric_limits<double>::infinity(),
                                spec);
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

void check_threshold(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("distribution argument must be nonnegative");
  }
}

}  // namespace

void DoubleNakagamiParams::validate() const {
  const bool finite = std::isfinite(m1) && std::isfinite(m2) && std::isfinite(omega1) &&
                      std::isfinite(omega2);
  if (!finite || m1 < 0.5 || m2 < 0.5 || !(omega1 > 0.0) || !(omega2 > 0.0)) {
    throw DomainError("double Nakagami parameters need m >= 0.5 and omega > 0");
  }
}

void LinkGeometry::validate() const {
  if (!(distance > 0.0) || !std::isfinite(distance) || !(pathloss_exp >= 0.0) ||
      !std::isfinite(pathloss_exp)) {
    throw DomainError("link geometry needs distance > 0 and path-loss exponent >= 0");
  }
}

double effective_scale(const DoubleNakagamiParams& params, const LinkGeometry& geom) {
  params.validate();
  geom.validate();
  return std::pow(geom.distance, -geom.pathloss_exp);
}

double pdf_gain_sq(double x, const DoubleNakagamiParams& params) {
  params.validate();
  if (!(x > 0.0)) {
    throw DomainError("pdf_gain_sq requires x > 0");
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  // f(x) = RootDensity(sqrt(x)) / (2 sqrt(x))
  const double t = std::sqrt(x);
  return RootDensity(params)(t) / (2.0 * t);
}

double cdf_gain_sq(double x, const DoubleNakagamiParams& params,
                   const specfun::QuadratureSpec& spec) {
  params.validate();
  check_threshold(x);
  if (x == 0.0) {
    return 0.0;
  }
  if (std::isinf(x)) {
    return 1.0;
  }
  const RootDensity density(params);
  const double lower = lower_mass(x, density, spec);
  if (lower > kTailSwitch) {
    return clamp01(1.0 - upper_mass(x, density, spec));
  }
  return clamp01(lower);
}

double survival_gain_sq(double x, const DoubleNakagamiParams& params,
                        const specfun::QuadratureSpec& spec) {
  params.validate();
  check_threshold(x);
  if (x == 0.0) {
    return 1.0;
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  const RootDensity density(params);
  const double lower = lower_mass(x, density, spec);
  if (lower > kTailSwitch) {
    return clamp01(upper_mass(x, density, spec));
  }
  return clamp01(1.0 - lower);
}

GainSampler::GainSampler(const DoubleNakagamiParams& params, const LinkGeometry& geom)
    : first_(params.m1, params.omega1 / params.m1),
      second_(params.m2, params.omega2 / params.m2),
      scale_(effective_scale(params, geom)) {}

double sample_gain_sq(const DoubleNakagamiParams& params, const LinkGeometry& geom,
                      RngStream& stream) {
  GainSampler sampler(params, geom);
  return sampler(stream);
}

double Link::survival(double threshold) const {
  check_threshold(threshold);
  return survival_gain_sq(threshold / scale(), params);
}

double Link::cdf(double threshold) const {
  check_threshold(threshold);
  return cdf_gain_sq(threshold / scale(), params);
}

}  // namespace canoma::channel
