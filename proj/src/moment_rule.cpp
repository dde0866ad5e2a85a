#include "moment_rule.hpp"

#include <cmath>

namespace katu::detail {

Stencil interval_stencil(std::size_t i, std::size_t n) {
  if (n == 2) {
    return {{0, 1, 0}, 2};
  }
  if (i == 1) {
    return {{0, 1, 2}, 3};
  }
  return {{i - 2, i - 1, i}, 3};
}

namespace {

// int_{lo}^{hi} u^(m-1) du for 0 <= lo < hi.
double monomial_integral(double lo, double hi, int m) {
  const double top = std::pow(hi, m) / m;
  if (lo == 0.0) {
    return top;
  }
  return -top * std::expm1(m * std::log1p((lo - hi) / hi));
}

}  // namespace

std::vector<std::array<double, 3>> interval_weights(std::span<const double> u, std::size_t i,
                                                    int N, double inv_rho) {
  const Stencil st = interval_stencil(i, u.size());
  const double lo = u[i - 1];
  const double hi = u[i];
  const double p0 = u[st.nodes[0]];
  const double p1 = u[st.nodes[1]];
  const double d10 = p1 - p0;

  // I[m] = int u^(m-1), m = 1..N+2.
  std::vector<double> I(static_cast<std::size_t>(N) + 3, 0.0);
  for (int m = 1; m <= N + 2; ++m) {
    I[static_cast<std::size_t>(m)] = monomial_integral(lo, hi, m);
  }

  std::vector<std::array<double, 3>> w(static_cast<std::size_t>(N));
  for (int k = 1; k <= N; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double i0 = I[kk];
    const double j1 = I[kk + 1] - p0 * i0;  // int u^(k-1) (u - p0)
    if (st.count == 2) {
      w[kk - 1] = {(i0 - j1 / d10) * inv_rho, j1 / d10 * inv_rho, 0.0};
      continue;
    }
    const double p2 = u[st.nodes[2]];
    const double d20 = p2 - p0;
    const double d21 = p2 - p1;
    const double j2 = I[kk + 2] - (p0 + p1) * I[kk + 1] + p0 * p1 * i0;  // (u-p0)(u-p1)
    w[kk - 1] = {(i0 - j1 / d10 + j2 / (d10 * d20)) * inv_rho,
                 (j1 / d10 - j2 * (1.0 / d21 + 1.0 / d10) / d20) * inv_rho,
                 j2 / (d21 * d20) * inv_rho};
  }
  return w;
}

std::vector<std::vector<double>> accumulate_moments(std::span<const double> u,
                                                    std::span<const double> x, int N,
                                                    double inv_rho) {
  const std::size_t n = u.size();
  std::vector<std::vector<double>> V(static_cast<std::size_t>(N), std::vector<double>(n, 0.0));
  for (std::size_t i = 1; i < n; ++i) {
    const Stencil st = interval_stencil(i, n);
    const auto w = interval_weights(u, i, N, inv_rho);
    for (std::size_t k = 0; k < w.size(); ++k) {
      double step = 0.0;
      for (std::size_t j = 0; j < st.count; ++j) {
        step += w[k][j] * x[st.nodes[j]];
      }
      V[k][i] = V[k][i - 1] + step;
    }
  }
  return V;
}

double scaled_product(double coeff, double log_scale, double exponent, double value) {
  if (value == 0.0 || coeff == 0.0) {
    return 0.0;
  }
  const double magnitude = std::exp(exponent * log_scale + std::log(std::abs(value)));
  return coeff * std::copysign(magnitude, value);
}

}  // namespace katu::detail
