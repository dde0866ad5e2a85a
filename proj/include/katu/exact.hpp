#pragma once

#include "katu/core.hpp"

namespace katu {

/// Closed-form integrals of the power families
///   left:  x(t) = (t^rho - a^rho)^v,  right: y(t) = (b^rho - t^rho)^v,  v > -1,
/// which map to rho^-alpha Gamma(v+1)/Gamma(alpha+v+1) * (gap)^(alpha+v).
double exact_left_power(const OperatorParams& params, double v, double t);
double exact_right_power(const OperatorParams& params, double v, double t);

/// Left integral from 0 of t^(2 rho): 2 rho^-alpha / Gamma(alpha+3) * t^(rho(alpha+2)).
/// Requires params.a() == 0.
double exact_testfn_integral(const OperatorParams& params, double t);

}  // namespace katu
