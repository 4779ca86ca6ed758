#pragma once

#include <stdexcept>
#include <string>

namespace canoma {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
/// The best estimate obtained so far is kept so callers may still use it.
class AccuracyError : public std::runtime_error {
public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double best_estimate_;
  double error_estimate_;
};

/// An objective returned a non-finite value during optimization or a
/// concavity scan.
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace canoma
