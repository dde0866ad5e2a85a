#include "katu/exact.hpp"

#include <cmath>

#include "katu/specfun.hpp"

namespace katu {

namespace {

void check_power_args(const OperatorParams& params, double v, double t) {
  if (!(v > -1.0) || !std::isfinite(v)) {
    throw DomainError("v", "exponent must be finite and > -1");
  }
  if (!(t >= params.a() && t <= params.b())) {
    throw DomainError("t", "must lie in [a, b]");
  }
}

double power_image(const OperatorParams& params, double v, double gap) {
  const double alpha = params.alpha();
  const double scale =
      std::pow(params.rho(), -alpha) * gamma_fn(v + 1.0) / gamma_fn(alpha + v + 1.0);
  return scale * std::pow(gap, alpha + v);
}

}  // namespace

double exact_left_power(const OperatorParams& params, double v, double t) {
  check_power_args(params, v, t);
  return power_image(params, v, power_gap(t, params.a(), params.rho()));
}

double exact_right_power(const OperatorParams& params, double v, double t) {
  check_power_args(params, v, t);
  return power_image(params, v, power_gap(params.b(), t, params.rho()));
}

double exact_testfn_integral(const OperatorParams& params, double t) {
  if (params.a() != 0.0) {
    throw DomainError("a", "the test-function closed form is stated from a = 0");
  }
  if (!(t >= 0.0 && t <= params.b())) {
    throw DomainError("t", "must lie in [0, b]");
  }
  const double alpha = params.alpha();
  const double rho = params.rho();
  return 2.0 * std::pow(rho, -alpha) / gamma_fn(alpha + 3.0) * std::pow(t, rho * (alpha + 2.0));
}

}  // namespace katu
