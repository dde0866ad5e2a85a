#include "katu/core.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace katu {

PoleError::PoleError(double x)
    : std::domain_error("gamma: pole at x = " + std::to_string(x)), x_(x) {}

ToleranceNotReached::ToleranceNotReached(double estimate, double error_estimate)
    : std::runtime_error("quadrature: tolerance not reached (estimate " +
                         std::to_string(estimate) + ", error " +
                         std::to_string(error_estimate) + ")"),
      estimate_(estimate),
      error_(error_estimate) {}

SingularPivotError::SingularPivotError(double t, double pivot)
    : std::runtime_error("solver: singular pivot " + std::to_string(pivot) +
                         " at t = " + std::to_string(t)),
      t_(t) {}

OperatorParams make_params(double alpha, double rho, double a, double b) {
  // Negated comparisons so that NaN is rejected too.
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha", "must be a finite positive number");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("rho", "must be a finite positive number");
  }
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw DomainError("a", "must be a finite nonnegative number");
  }
  if (!(b > a) || !std::isfinite(b)) {
    throw DomainError("b", "must be finite and greater than a");
  }
  return OperatorParams(alpha, rho, a, b);
}

Grid make_uniform_grid(double a, double b, std::size_t n_points) {
  if (n_points < 2) {
    throw DomainError("n_points", "a grid needs at least 2 points");
  }
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("b", "grid requires finite a < b");
  }
  const double h = (b - a) / static_cast<double>(n_points - 1);
  std::vector<double> points(n_points);
  for (std::size_t i = 0; i + 1 < n_points; ++i) {
    points[i] = a + static_cast<double>(i) * h;
  }
  points.back() = b;
  return Grid(std::move(points), h);
}

SampledFunction::SampledFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("values", "length " + std::to_string(values_.size()) +
                                    " does not match grid size " +
                                    std::to_string(grid_.size()));
  }
}

SampledFunction sample(const Grid& grid, const std::function<double(double)>& x) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid.points()) {
    values.push_back(x(t));
  }
  return SampledFunction(grid, std::move(values));
}

double power_gap(double t, double a, double rho) {
  if (t <= a) {
    return 0.0;
  }
  if (a == 0.0) {
    return std::pow(t, rho);
  }
  // a^rho * (exp(rho*log(t/a)) - 1)
  return std::pow(a, rho) * std::expm1(rho * std::log1p((t - a) / a));
}

}  // namespace katu
