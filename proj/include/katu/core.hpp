#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "katu/errors.hpp"

namespace katu {

enum class Side { left, right };

/// Parameters (alpha, rho, a, b) of one Katugampola operator instance.
/// Always valid: alpha > 0, rho > 0, 0 <= a < b.
class OperatorParams {
public:
  double alpha() const noexcept { return alpha_; }
  double rho() const noexcept { return rho_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  friend OperatorParams make_params(double alpha, double rho, double a, double b);

private:
  OperatorParams(double alpha, double rho, double a, double b)
      : alpha_(alpha), rho_(rho), a_(a), b_(b) {}

  double alpha_;
  double rho_;
  double a_;
  double b_;
};

/// Validates and builds operator parameters; throws DomainError naming the field.
OperatorParams make_params(double alpha, double rho, double a, double b);

/// Uniform grid a = t_0 < t_1 < ... < t_{n-1} = b with endpoints stored exactly.
class Grid {
public:
  std::span<const double> points() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return points_.size(); }
  double front() const noexcept { return points_.front(); }
  double back() const noexcept { return points_.back(); }
  double operator[](std::size_t i) const noexcept { return points_[i]; }

  friend Grid make_uniform_grid(double a, double b, std::size_t n_points);

private:
  Grid(std::vector<double> points, double spacing)
      : points_(std::move(points)), spacing_(spacing) {}

  std::vector<double> points_;
  double spacing_;
};

Grid make_uniform_grid(double a, double b, std::size_t n_points);

/// Function values on a grid.
class SampledFunction {
public:
  SampledFunction(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

private:
  Grid grid_;
  std::vector<double> values_;
};

SampledFunction sample(const Grid& grid, const std::function<double(double)>& x);

/// t^rho - a^rho for 0 <= a <= t, accurate when t is close to a or rho is small.
double power_gap(double t, double a, double rho);

}  // namespace katu
