#include "katu/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "katu/specfun.hpp"

namespace katu {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1], nonnegative half.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double result;
  double error;
  int depth;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const RealFunction& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * sum;
    }
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

constexpr std::size_t kMaxPanels = 1u << 18;

// Degree-7 smoothstep: psi ~ theta^4 at 0 and 1 - psi ~ (1 - theta)^4 at 1.
double smoothstep(double theta) {
  const double t2 = theta * theta;
  return t2 * t2 * (35.0 + theta * (-84.0 + theta * (70.0 - 20.0 * theta)));
}

double smoothstep_derivative(double theta) {
  const double u = theta * (1.0 - theta);
  return 140.0 * u * u * u;
}

void check_settings(const QuadratureSettings& settings) {
  if (!(settings.rel_tol > 0.0)) {
    throw DomainError("rel_tol", "must be positive");
  }
  if (!(settings.abs_tol > 0.0)) {
    throw DomainError("abs_tol", "must be positive");
  }
  if (settings.max_depth < 1) {
    throw DomainError("max_depth", "must be >= 1");
  }
}

// 1 - psi^(1/alpha), given psi_c = 1 - psi.
double one_minus_root(double psi_c, double inv_alpha) {
  return -std::expm1(std::log1p(-psi_c) * inv_alpha);
}

// Integrates x(tau(theta)) psi'(theta) over [0, 1], where tau^rho moves from
// `near_pow` (theta = 0) to `far_pow` (theta = 1) along near + sign * gap * psi^(1/alpha).
// x is never evaluated exactly at far_tau, where it may be singular.
double graded_integral(const OperatorParams& params, const RealFunction& x, double near_pow,
                       double far_pow, double gap, double near_tau, double far_tau,
                       double prefactor, const QuadratureSettings& settings) {
  const double lo_tau = std::min(near_tau, far_tau);
  const double hi_tau = std::max(near_tau, far_tau);
  const double inv_alpha = 1.0 / params.alpha();
  const double inv_rho = 1.0 / params.rho();
  const double direction = far_pow < near_pow ? -1.0 : 1.0;
  auto integrand = [&](double theta) {
    const double weight = smoothstep_derivative(theta);
    if (weight == 0.0) {
      return 0.0;
    }
    double tau_pow;
    if (theta <= 0.5) {
      const double psi = smoothstep(theta);
      tau_pow = near_pow + direction * gap * std::pow(psi, inv_alpha);
    } else {
      const double psi_c = smoothstep(1.0 - theta);
      tau_pow = far_pow - direction * gap * one_minus_root(psi_c, inv_alpha);
    }
    double tau = std::clamp(std::pow(std::max(tau_pow, 0.0), inv_rho), lo_tau, hi_tau);
    if (tau == far_tau) {
      tau = std::nextafter(far_tau, near_tau);
    }
    return x(tau) * weight;
  };
  if (prefactor == 0.0) {
    return 0.0;
  }
  QuadratureSettings inner = settings;
  inner.abs_tol = settings.abs_tol / prefactor;
  return prefactor * integrate_adaptive(integrand, 0.0, 1.0, inner);
}

double prefactor_for(const OperatorParams& params, double gap) {
  const double alpha = params.alpha();
  return std::pow(params.rho(), -alpha) / gamma_fn(alpha + 1.0) * std::pow(gap, alpha);
}

}  // namespace

double integrate_adaptive(const RealFunction& f, double lo, double hi,
                          const QuadratureSettings& settings) {
  check_settings(settings);
  if (lo == hi) {
    return 0.0;
  }
  std::priority_queue<Panel> open;
  double frozen_result = 0.0;

  Panel first = gauss_kronrod(f, lo, hi, 0);
  double total = first.result;
  double total_error = first.error;
  open.push(first);
  std::size_t panels = 1;

  while (true) {
    const double target = std::max(settings.abs_tol, settings.rel_tol * std::abs(total));
    if (total_error <= target) {
      break;
    }
    if (open.empty() || panels >= kMaxPanels) {
      throw ToleranceNotReached(total, total_error);
    }
    Panel worst = open.top();
    open.pop();
    if (worst.depth >= settings.max_depth) {
      frozen_result += worst.result;
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = gauss_kronrod(f, worst.lo, mid, worst.depth + 1);
    Panel right = gauss_kronrod(f, mid, worst.hi, worst.depth + 1);
    total += left.result + right.result - worst.result;
    total_error += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
    panels += 2;
  }

  // Re-sum to shed the drift of the running updates.
  double result = frozen_result;
  while (!open.empty()) {
    result += open.top().result;
    open.pop();
  }
  return result;
}

double oracle_left(const OperatorParams& params, const RealFunction& x, double t,
                   const QuadratureSettings& settings) {
  check_settings(settings);
  if (!(t >= params.a() && t <= params.b())) {
    throw DomainError("t", "must lie in [a, b]");
  }
  const double gap = power_gap(t, params.a(), params.rho());
  if (gap == 0.0) {
    return 0.0;
  }
  const double rho = params.rho();
  return graded_integral(params, x, std::pow(t, rho), std::pow(params.a(), rho), gap, t,
                         params.a(), prefactor_for(params, gap), settings);
}

double oracle_right(const OperatorParams& params, const RealFunction& x, double t,
                    const QuadratureSettings& settings) {
  check_settings(settings);
  if (!(t >= params.a() && t <= params.b())) {
    throw DomainError("t", "must lie in [a, b]");
  }
  const double gap = power_gap(params.b(), t, params.rho());
  if (gap == 0.0) {
    return 0.0;
  }
  const double rho = params.rho();
  return graded_integral(params, x, std::pow(t, rho), std::pow(params.b(), rho), gap, t,
                         params.b(), prefactor_for(params, gap), settings);
}

MonotoneCubic::MonotoneCubic(const SampledFunction& samples)
    : origin_(samples.grid().front()),
      step_(samples.grid().spacing()),
      values_(samples.values().begin(), samples.values().end()),
      slopes_(values_.size(), 0.0) {
  const std::size_t n = values_.size();
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    secant[i] = (values_[i + 1] - values_[i]) / step_;
  }
  if (n == 2) {
    slopes_[0] = slopes_[1] = secant[0];
    return;
  }
  // Uniform spacing: the weighted harmonic mean reduces to the plain one.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s0 = secant[i - 1];
    const double s1 = secant[i];
    slopes_[i] = (s0 * s1 > 0.0) ? 2.0 / (1.0 / s0 + 1.0 / s1) : 0.0;
  }
  // One-sided three-point end slopes, limited to preserve shape.
  auto end_slope = [](double s_near, double s_far) {
    double d = 0.5 * (3.0 * s_near - s_far);
    if (d * s_near <= 0.0) {
      d = 0.0;
    } else if (s_near * s_far <= 0.0 && std::abs(d) > std::abs(3.0 * s_near)) {
      d = 3.0 * s_near;
    }
    return d;
  };
  slopes_[0] = end_slope(secant[0], secant[1]);
  slopes_[n - 1] = end_slope(secant[n - 2], secant[n - 3]);
}

double MonotoneCubic::operator()(double t) const {
  const std::size_t n = values_.size();
  const double pos = (t - origin_) / step_;
  std::size_t i = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
  i = std::min(i, n - 2);
  const double u = std::clamp(pos - static_cast<double>(i), 0.0, 1.0);
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
  const double h10 = u3 - 2.0 * u2 + u;
  const double h01 = -2.0 * u3 + 3.0 * u2;
  const double h11 = u3 - u2;
  return h00 * values_[i] + h10 * step_ * slopes_[i] + h01 * values_[i + 1] +
         h11 * step_ * slopes_[i + 1];
}

double oracle_left(const OperatorParams& params, const SampledFunction& x, double t,
                   const QuadratureSettings& settings) {
  const MonotoneCubic interpolant(x);
  return oracle_left(params, RealFunction(std::cref(interpolant)), t, settings);
}

double oracle_right(const OperatorParams& params, const SampledFunction& x, double t,
                    const QuadratureSettings& settings) {
  const MonotoneCubic interpolant(x);
  return oracle_right(params, RealFunction(std::cref(interpolant)), t, settings);
}

}  // namespace katu
