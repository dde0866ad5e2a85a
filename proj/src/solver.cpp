#include "katu/solver.hpp"

#include <array>
#include <cmath>

#include "katu/approx.hpp"
#include "moment_rule.hpp"

namespace katu {

namespace {

constexpr double kPivotFloor = 1e-12;
constexpr double kConsistencyTol = 1e-9;

struct Node {
  double t = 0.0;
  double g = 0.0;      // t^rho
  double log_g = 0.0;
  double diag = 1.0;   // A g^alpha + 1
};

// sum_k B_k g^(alpha-k) value_k, with each product formed in log space.
template <typename ValueOf>
double memory_sum(const SeriesCoefficients& coeffs, double alpha, const Node& node,
                  ValueOf value_of) {
  double sum = 0.0;
  for (int k = 1; k <= coeffs.N; ++k) {
    const auto kk = static_cast<std::size_t>(k - 1);
    sum += detail::scaled_product(coeffs.B[kk], node.log_g, alpha - k, value_of(kk));
  }
  return sum;
}

}  // namespace

IntegralEquationProblem::IntegralEquationProblem(OperatorParams params, RealFunction f,
                                                 double x0)
    : params_(params), f_(std::move(f)), x0_(x0) {
  if (params_.a() != 0.0) {
    throw DomainError("a", "the integral equation is posed from a = 0");
  }
  if (!f_) {
    throw DomainError("f", "right-hand side must be callable");
  }
}

SolverSolution solve_integral_equation(const IntegralEquationProblem& problem, const Grid& grid,
                                       int N) {
  const OperatorParams& params = problem.params();
  if (grid.front() != 0.0) {
    throw DomainError("grid", "must start at 0");
  }
  if (grid.back() > params.b()) {
    throw DomainError("grid", "must not extend past b");
  }
  const SeriesCoefficients coeffs = series_coefficients(params, N);
  const double alpha = params.alpha();
  const double rho = params.rho();
  const double inv_rho = 1.0 / rho;
  const RealFunction& f = problem.rhs();

  if (std::abs(f(0.0) - problem.x0()) > kConsistencyTol) {
    throw ConsistencyError("solver: the constraint at t = 0 forces x(0) = f(0) = " +
                           std::to_string(f(0.0)) + ", but x0 = " +
                           std::to_string(problem.x0()));
  }

  const std::size_t n = grid.size();
  std::vector<Node> nodes(n);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    Node& node = nodes[i];
    node.t = grid[i];
    node.g = power_gap(node.t, 0.0, rho);
    node.log_g = node.g > 0.0 ? std::log(node.g) : 0.0;
    node.diag = coeffs.A * std::pow(node.g, alpha) + 1.0;
    u[i] = node.g;
  }

  const auto nk = static_cast<std::size_t>(N);
  SolverSolution sol{grid, std::vector<double>(n, 0.0),
                     std::vector<std::vector<double>>(nk, std::vector<double>(n, 0.0)), N};
  std::vector<double>& x = sol.x;
  auto& V = sol.V;
  x[0] = problem.x0();

  auto advance = [&](std::size_t i, const std::vector<std::array<double, 3>>& w) {
    const detail::Stencil st = detail::interval_stencil(i, n);
    for (std::size_t k = 0; k < nk; ++k) {
      double step = 0.0;
      for (std::size_t j = 0; j < st.count; ++j) {
        step += w[k][j] * x[st.nodes[j]];
      }
      V[k][i] = V[k][i - 1] + step;
    }
  };

  std::size_t next = 1;
  if (n == 2) {
    // Linear rule on the single interval: unknown x_1 only.
    const auto w = detail::interval_weights(u, 1, N, inv_rho);
    const Node& nd = nodes[1];
    const double known = memory_sum(coeffs, alpha, nd, [&](std::size_t k) { return w[k][0] * x[0]; });
    const double pivot = nd.diag - memory_sum(coeffs, alpha, nd, [&](std::size_t k) { return w[k][1]; });
    if (std::abs(pivot) < kPivotFloor) {
      throw SingularPivotError(nd.t, pivot);
    }
    x[1] = (f(nd.t) + known) / pivot;
    advance(1, w);
    return sol;
  }

  {
    // Intervals 1 and 2 both interpolate through nodes (0, 1, 2).
    const auto w1 = detail::interval_weights(u, 1, N, inv_rho);
    const auto w2 = detail::interval_weights(u, 2, N, inv_rho);
    const Node& n1 = nodes[1];
    const Node& n2 = nodes[2];
    std::array<double, 3> row1{};
    std::array<double, 3> row2{};
    for (std::size_t j = 0; j < 3; ++j) {
      row1[j] = memory_sum(coeffs, alpha, n1, [&](std::size_t k) { return w1[k][j]; });
      row2[j] = memory_sum(coeffs, alpha, n2, [&](std::size_t k) { return w1[k][j] + w2[k][j]; });
    }
    const double m11 = n1.diag - row1[1];
    const double m12 = -row1[2];
    const double m21 = -row2[1];
    const double m22 = n2.diag - row2[2];
    const double r1 = f(n1.t) + row1[0] * x[0];
    const double r2 = f(n2.t) + row2[0] * x[0];
    const double det = m11 * m22 - m12 * m21;
    if (std::abs(det) < kPivotFloor) {
      throw SingularPivotError(n1.t, det);
    }
    x[1] = (r1 * m22 - m12 * r2) / det;
    x[2] = (m11 * r2 - m21 * r1) / det;
    advance(1, w1);
    advance(2, w2);
    next = 3;
  }

  for (std::size_t i = next; i < n; ++i) {
    const auto w = detail::interval_weights(u, i, N, inv_rho);
    const Node& nd = nodes[i];
    const double known = memory_sum(coeffs, alpha, nd, [&](std::size_t k) {
      return V[k][i - 1] + (w[k][0] * x[i - 2] + w[k][1] * x[i - 1]);
    });
    const double pivot = nd.diag - memory_sum(coeffs, alpha, nd, [&](std::size_t k) { return w[k][2]; });
    if (std::abs(pivot) < kPivotFloor) {
      throw SingularPivotError(nd.t, pivot);
    }
    x[i] = (f(nd.t) + known) / pivot;
    advance(i, w);
  }
  return sol;
}

}  // namespace katu
