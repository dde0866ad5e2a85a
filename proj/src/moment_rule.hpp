#pragma once

// Product-integration rule for the moment integrals
//   (1/rho) int_{u_0}^{u_i} u^(k-1) x du,   u = t^rho - a^rho (or b^rho - t^rho),
// shared by the series approximation and the integral-equation solver.
//
// On each interval [u_{i-1}, u_i] x is replaced by the quadratic through
// three nodes (i-2, i-1, i), or (0, 1, 2) on the first interval, and the
// monomial weight is integrated exactly. A two-point grid uses the linear
// interpolant. The result is a fixed linear combination of x at the nodes.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace katu::detail {

struct Stencil {
  std::array<std::size_t, 3> nodes{};
  std::size_t count = 0;
};

/// Nodes that interval [i-1, i] interpolates through, for a grid of n points.
Stencil interval_stencil(std::size_t i, std::size_t n);

/// Weights per k = 1..N (row k-1) such that the contribution of interval
/// [i-1, i] to moment k is sum_j w[k-1][j] * x[stencil.nodes[j]].
std::vector<std::array<double, 3>> interval_weights(std::span<const double> u, std::size_t i,
                                                    int N, double inv_rho);

/// Cumulative moments V[k-1][i] for k = 1..N on ascending u with u[0] = 0.
std::vector<std::vector<double>> accumulate_moments(std::span<const double> u,
                                                    std::span<const double> x, int N,
                                                    double inv_rho);

/// coeff * scale^exponent * value evaluated through logarithms so that
/// scale^exponent may overflow while the product stays finite. value == 0 gives 0.
double scaled_product(double coeff, double log_scale, double exponent, double value);

}  // namespace katu::detail
