#pragma once

#include <vector>

#include "katu/core.hpp"
#include "katu/oracle.hpp"

namespace katu {

/// I^{alpha,rho}_{0+} x(t) + x(t) = f(t) with x(0) = x0.
class IntegralEquationProblem {
public:
  /// Throws DomainError unless params.a() == 0.
  IntegralEquationProblem(OperatorParams params, RealFunction f, double x0 = 0.0);

  const OperatorParams& params() const noexcept { return params_; }
  const RealFunction& rhs() const noexcept { return f_; }
  double x0() const noexcept { return x0_; }

private:
  OperatorParams params_;
  RealFunction f_;
  double x0_;
};

struct SolverSolution {
  Grid grid;
  std::vector<double> x;
  std::vector<std::vector<double>> V;  // V[k-1][i], same layout as MomentFunctions
  int N = 0;
};

/// Replaces the fractional integral by its order-N truncation and marches the
/// resulting algebraic constraint coupled to the moment equations
///   V_k' = t^(rho-1) t^(rho(k-1)) x,  V_k(0) = 0.
/// Moments advance with the same product rule as compute_moments_left, which
/// is linear in x, so each step is an exact linear solve for x(t_i). The first
/// interval's stencil reaches node 2, so x(t_1), x(t_2) are solved together.
///
/// Throws ConsistencyError if |f(0) - x0| > 1e-9 and SingularPivotError if a
/// step's pivot falls below 1e-12 in magnitude.
SolverSolution solve_integral_equation(const IntegralEquationProblem& problem, const Grid& grid,
                                       int N);

}  // namespace katu
