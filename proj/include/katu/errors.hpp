#pragma once

#include <stdexcept>
#include <string>

namespace katu {

/// Invalid argument to a numerical routine. `field()` names the offending input.
class DomainError : public std::domain_error {
public:
  DomainError(std::string field, const std::string& what)
      : std::domain_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Gamma evaluated at a nonpositive integer.
class PoleError : public std::domain_error {
public:
  explicit PoleError(double x);
  double where() const noexcept { return x_; }

private:
  double x_;
};

/// Adaptive quadrature exhausted its depth budget before meeting tolerance.
class ToleranceNotReached : public std::runtime_error {
public:
  ToleranceNotReached(double estimate, double error_estimate);
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

private:
  double estimate_;
  double error_;
};

/// The implicit step of the integral-equation march has a (near) zero pivot.
class SingularPivotError : public std::runtime_error {
public:
  SingularPivotError(double t, double pivot);
  double t() const noexcept { return t_; }

private:
  double t_;
};

/// The algebraic constraint at t = 0 is incompatible with the initial value.
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace katu
