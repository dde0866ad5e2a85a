#pragma once

#include <optional>
#include <vector>

#include "katu/core.hpp"

namespace katu {

/// A and B_1..B_N of the truncated expansion
///   I x(t) ~ A g^alpha x(t) - sum_k B_k g^(alpha-k) V_k(t),   g = t^rho - a^rho.
struct SeriesCoefficients {
  int N = 0;
  double A = 0.0;
  std::vector<double> B;  // B[k-1] holds B_k
};

/// A = rho^-alpha/Gamma(alpha+1) * sum_{k=0}^N c_k and
/// B_k = rho^(1-alpha) k c_k / Gamma(alpha+1), with c_k from binom_coeffs.
/// The k c_k form equals Gamma(k-alpha)/(Gamma(-alpha)(k-1)!) but stays finite
/// at integer alpha.
SeriesCoefficients series_coefficients(const OperatorParams& params, int N);

/// Running moments on a grid. Left: V[k-1][i] = int_a^{t_i} tau^(rho-1)
/// (tau^rho - a^rho)^(k-1) x dtau. Right: the W_k analogue over [t_i, b].
struct MomentFunctions {
  Grid grid;
  Side side;
  std::vector<std::vector<double>> V;
};

MomentFunctions compute_moments_left(const OperatorParams& params, const SampledFunction& x,
                                     int N);
MomentFunctions compute_moments_right(const OperatorParams& params, const SampledFunction& x,
                                      int N);

struct ApproxResult {
  Grid grid;
  std::vector<double> values;
  int N = 0;
  std::optional<std::vector<double>> error_envelope;
};

/// Truncated-series approximation of the left integral at every grid point.
/// The grid must start at a. If `M` (a bound on |x'|) is given, the a-priori
/// truncation envelope is attached.
ApproxResult approx_left(const OperatorParams& params, const SampledFunction& x, int N,
                         std::optional<double> M = std::nullopt);

/// Right-sided counterpart; the grid must end at b.
ApproxResult approx_right(const OperatorParams& params, const SampledFunction& x, int N,
                          std::optional<double> M = std::nullopt);

/// M rho^-alpha/Gamma(alpha+1) g^alpha |t - endpoint| exp(alpha^2+alpha)/(alpha N^alpha),
/// g = t^rho - a^rho (left) or b^rho - t^rho (right).
double error_bound(const OperatorParams& params, double M, double t, int N,
                   Side side = Side::left);

}  // namespace katu
