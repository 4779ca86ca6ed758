#pragma once

#include <functional>

namespace canoma::specfun {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 200;

  /// Throws DomainError when a tolerance is not strictly positive or the
  /// subdivision budget is below one.
  void validate() const;
};

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
///
/// Negative orders are folded onto |nu| (K_{-nu} = K_nu), so both signs go
/// through the same evaluation. Arguments far enough in the tail that the
/// result underflows a double return 0.
double bessel_k(double nu, double x);

/// Globally adaptive 21-point Gauss-Kronrod quadrature of f over [a, b].
///
/// `b` may be +infinity; the half-line is then mapped onto [0, 1) with
/// x = a + t / (1 - t). Throws AccuracyError (carrying the best estimate)
/// when the subdivision budget is exhausted before the error estimate drops
/// below max(abs_tol, rel_tol * |I|).
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec = {});

}  // namespace canoma::specfun
