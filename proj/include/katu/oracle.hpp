#pragma once

#include <functional>
#include <vector>

#include "katu/core.hpp"

namespace katu {

using RealFunction = std::function<double(double)>;

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 50;
};

/// Adaptive Gauss-Kronrod (7/15) bisection of f over [lo, hi]. Intervals are
/// refined largest-error-first until the summed error estimate is below
/// max(abs_tol, rel_tol * |result|); intervals at max_depth are not split.
/// Throws ToleranceNotReached when no splittable interval is left.
double integrate_adaptive(const RealFunction& f, double lo, double hi,
                          const QuadratureSettings& settings = {});

/// Direct evaluation of the left integral
///   rho^(1-alpha)/Gamma(alpha) * int_a^t tau^(rho-1) (t^rho - tau^rho)^(alpha-1) x(tau) dtau.
///
/// With s = tau^rho and w = (t^rho - s)^alpha the integral becomes
///   rho^-alpha / Gamma(alpha+1) * int_0^{(t^rho - a^rho)^alpha} x(tau(w)) dw,
/// which has no kernel singularity. The w-range is further graded towards
/// both ends by a degree-7 smoothstep so that integrable singularities of x at
/// tau = a and the w^(1/alpha) kink at w = 0 stay cheap to resolve.
///
/// x is never evaluated at tau = a itself. If x is singular there, the part of
/// the integral closer to a than double precision can resolve in tau is not
/// seen; for (tau^rho - a^rho)^v that is a relative error near
/// (eps / (t^rho - a^rho))^(1+v), about 1e-8 as v -> -1/2.
double oracle_left(const OperatorParams& params, const RealFunction& x, double t,
                   const QuadratureSettings& settings = {});

/// Mirror of oracle_left over [t, b] with w = (s - t^rho)^alpha.
double oracle_right(const OperatorParams& params, const RealFunction& x, double t,
                    const QuadratureSettings& settings = {});

/// Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson
/// slopes with weighted harmonic means) of samples on a uniform grid.
class MonotoneCubic {
public:
  explicit MonotoneCubic(const SampledFunction& samples);

  double operator()(double t) const;

private:
  double origin_;
  double step_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Oracle evaluation for sampled data, through a MonotoneCubic interpolant.
/// Accuracy is limited by interpolation, O(h^4) for smooth data.
double oracle_left(const OperatorParams& params, const SampledFunction& x, double t,
                   const QuadratureSettings& settings = {});
double oracle_right(const OperatorParams& params, const SampledFunction& x, double t,
                    const QuadratureSettings& settings = {});

}  // namespace katu
