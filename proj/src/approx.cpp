#include "katu/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "katu/specfun.hpp"
#include "moment_rule.hpp"

namespace katu {

namespace {

void check_order(int N) {
  if (N < 1) {
    throw DomainError("N", "truncation order must be >= 1");
  }
}

void check_grid(const OperatorParams& params, const Grid& grid, Side side) {
  if (grid.front() < params.a() || grid.back() > params.b()) {
    throw DomainError("grid", "points must lie in [a, b]");
  }
  if (side == Side::left && grid.front() != params.a()) {
    throw DomainError("grid", "left-sided moments need a grid starting at a");
  }
  if (side == Side::right && grid.back() != params.b()) {
    throw DomainError("grid", "right-sided moments need a grid ending at b");
  }
}

// Distance in the rho-power variable from the anchoring endpoint.
std::vector<double> gaps(const OperatorParams& params, const Grid& grid, Side side) {
  std::vector<double> g;
  g.reserve(grid.size());
  for (double t : grid.points()) {
    g.push_back(side == Side::left ? power_gap(t, params.a(), params.rho())
                                   : power_gap(params.b(), t, params.rho()));
  }
  return g;
}

MomentFunctions compute_moments(const OperatorParams& params, const SampledFunction& x, int N,
                                Side side) {
  check_order(N);
  const Grid& grid = x.grid();
  check_grid(params, grid, side);
  std::vector<double> u = gaps(params, grid, side);
  std::vector<double> values(x.values().begin(), x.values().end());
  if (side == Side::right) {
    std::reverse(u.begin(), u.end());
    std::reverse(values.begin(), values.end());
  }
  auto V = detail::accumulate_moments(u, values, N, 1.0 / params.rho());
  if (side == Side::right) {
    for (auto& row : V) {
      std::reverse(row.begin(), row.end());
    }
  }
  return {grid, side, std::move(V)};
}

ApproxResult approximate(const OperatorParams& params, const SampledFunction& x, int N,
                         std::optional<double> M, Side side) {
  const MomentFunctions moments = compute_moments(params, x, N, side);
  const SeriesCoefficients coeffs = series_coefficients(params, N);
  const Grid& grid = x.grid();
  const std::vector<double> g = gaps(params, grid, side);
  const double alpha = params.alpha();

  std::vector<double> values(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (g[i] == 0.0) {
      continue;  // every term vanishes at the anchoring endpoint
    }
    const double log_g = std::log(g[i]);
    double acc = coeffs.A * std::pow(g[i], alpha) * x[i];
    for (int k = 1; k <= N; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      acc -= detail::scaled_product(coeffs.B[kk - 1], log_g, alpha - k, moments.V[kk - 1][i]);
    }
    values[i] = acc;
  }

  ApproxResult result{grid, std::move(values), N, std::nullopt};
  if (M) {
    std::vector<double> envelope;
    envelope.reserve(grid.size());
    for (double t : grid.points()) {
      envelope.push_back(error_bound(params, *M, t, N, side));
    }
    result.error_envelope = std::move(envelope);
  }
  return result;
}

}  // namespace

SeriesCoefficients series_coefficients(const OperatorParams& params, int N) {
  check_order(N);
  const double alpha = params.alpha();
  const BinomCoeffs c = binom_coeffs(alpha, N);
  const double gamma_a1 = gamma_fn(alpha + 1.0);
  const auto cs = c.coeffs();
  const double partial = std::accumulate(cs.begin(), cs.end(), 0.0);

  SeriesCoefficients out;
  out.N = N;
  out.A = std::pow(params.rho(), -alpha) / gamma_a1 * partial;
  out.B.resize(static_cast<std::size_t>(N));
  const double b_scale = std::pow(params.rho(), 1.0 - alpha) / gamma_a1;
  for (int k = 1; k <= N; ++k) {
    out.B[static_cast<std::size_t>(k - 1)] = b_scale * k * c[static_cast<std::size_t>(k)];
  }
  return out;
}

MomentFunctions compute_moments_left(const OperatorParams& params, const SampledFunction& x,
                                     int N) {
  return compute_moments(params, x, N, Side::left);
}

MomentFunctions compute_moments_right(const OperatorParams& params, const SampledFunction& x,
                                      int N) {
  return compute_moments(params, x, N, Side::right);
}

ApproxResult approx_left(const OperatorParams& params, const SampledFunction& x, int N,
                         std::optional<double> M) {
  return approximate(params, x, N, M, Side::left);
}

ApproxResult approx_right(const OperatorParams& params, const SampledFunction& x, int N,
                          std::optional<double> M) {
  return approximate(params, x, N, M, Side::right);
}

double error_bound(const OperatorParams& params, double M, double t, int N, Side side) {
  if (!(M >= 0.0)) {
    throw DomainError("M", "derivative bound must be >= 0");
  }
  check_order(N);
  if (!(t >= params.a() && t <= params.b())) {
    throw DomainError("t", "must lie in [a, b]");
  }
  const double alpha = params.alpha();
  const double rho = params.rho();
  const double g = side == Side::left ? power_gap(t, params.a(), rho) : power_gap(params.b(), t, rho);
  const double length = side == Side::left ? t - params.a() : params.b() - t;
  return M * std::pow(rho, -alpha) / gamma_fn(alpha + 1.0) * std::pow(g, alpha) * length *
         std::exp(alpha * alpha + alpha) / (alpha * std::pow(static_cast<double>(N), alpha));
}

}  // namespace katu
