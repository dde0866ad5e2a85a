#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "katu/approx.hpp"
#include "katu/exact.hpp"
#include "katu/oracle.hpp"
#include "katu/specfun.hpp"

using namespace katu;

namespace {

double max_abs_error(const ApproxResult& r, const std::function<double(double)>& exact) {
  double worst = 0.0;
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    worst = std::max(worst, std::abs(r.values[i] - exact(r.grid[i])));
  }
  return worst;
}

}  // namespace

TEST_CASE("series coefficients") {
  SUBCASE("alpha = 1, rho = 1 collapses to a single moment") {
    const auto c = series_coefficients(make_params(1.0, 1.0, 0.0, 1.0), 5);
    CHECK(c.A == 0.0);
    CHECK(c.B[0] == doctest::Approx(-1.0).epsilon(1e-15));
    for (std::size_t k = 1; k < 5; ++k) {
      CHECK(c.B[k] == 0.0);
    }
  }
  SUBCASE("alpha = 0.5, rho = 1, N = 2") {
    // Gamma(1.5) = sqrt(pi)/2
    const auto c = series_coefficients(make_params(0.5, 1.0, 0.0, 1.0), 2);
    CHECK(c.N == 2);
    CHECK(c.A == doctest::Approx(0.42314218766081722).epsilon(1e-14));
    CHECK(c.B[0] == doctest::Approx(-0.56418958354775629).epsilon(1e-14));
    CHECK(c.B[1] == doctest::Approx(-0.28209479177387814).epsilon(1e-14));
  }
  SUBCASE("A decays as N grows") {
    const auto p = make_params(0.9, 0.2, 0.0, 0.5);
    CHECK(std::abs(series_coefficients(p, 100).A) < std::abs(series_coefficients(p, 10).A));
  }
  SUBCASE("B_k equals the Gamma-ratio form at non-integer alpha") {
    for (double alpha : {0.3, 1.7, 2.4}) {
      const double rho = 1.4;
      const auto c = series_coefficients(make_params(alpha, rho, 0.0, 1.0), 15);
      const double g_neg = gamma_fn(-alpha);
      for (int k = 1; k <= 15; ++k) {
        const double ratio = std::pow(rho, 1 - alpha) * gamma_fn(k - alpha) /
                             (gamma_fn(alpha + 1) * g_neg * std::tgamma(static_cast<double>(k)));
        CHECK(c.B[static_cast<std::size_t>(k - 1)] == doctest::Approx(ratio).epsilon(1e-11));
      }
    }
  }
  SUBCASE("N must be positive") {
    CHECK_THROWS_AS(series_coefficients(make_params(0.5, 1.0, 0.0, 1.0), 0), DomainError);
  }
}

TEST_CASE("left moments") {
  const auto p = make_params(0.5, 1.0, 0.0, 0.5);
  const Grid g = make_uniform_grid(0.0, 0.5, 501);

  SUBCASE("zero integrand") {
    const auto m = compute_moments_left(p, sample(g, [](double) { return 0.0; }), 4);
    for (const auto& row : m.V) {
      CHECK(std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; }));
    }
  }
  SUBCASE("constant integrand, k = 1") {
    const auto m = compute_moments_left(p, sample(g, [](double) { return 1.0; }), 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(m.V[0][i] == doctest::Approx(g[i]).epsilon(1e-14));
    }
  }
  SUBCASE("x = t^2, k = 1 gives t^3/3") {
    const auto m = compute_moments_left(p, sample(g, [](double t) { return t * t; }), 1);
    CHECK(std::abs(m.V[0].back() - 1.0 / 24.0) <= 1e-6);
  }
  SUBCASE("powers of s are integrated exactly up to degree two") {
    // x = s^m with s = t^rho: V_k = T^(k+m) / (rho (k+m))
    const double rho = 0.3;
    const auto q = make_params(1.2, rho, 0.0, 0.5);
    for (int m : {0, 1, 2}) {
      const auto mom = compute_moments_left(q, sample(g, [&](double t) { return std::pow(t, rho * m); }), 12);
      for (int k = 1; k <= 12; ++k) {
        for (std::size_t i : {1u, 2u, 250u, 500u}) {
          const double T = std::pow(g[i], rho);
          const double expected = std::pow(T, k + m) / (rho * (k + m));
          CHECK(mom.V[static_cast<std::size_t>(k - 1)][i] == doctest::Approx(expected).epsilon(1e-10));
        }
      }
    }
  }
  SUBCASE("anchored at zero and nondecreasing for nonnegative x") {
    const auto q = make_params(0.8, 1.9, 0.1, 0.5);
    const Grid gq = make_uniform_grid(0.1, 0.5, 201);
    const auto m = compute_moments_left(q, sample(gq, [](double t) { return 1.0 + std::sin(9 * t); }), 6);
    for (const auto& row : m.V) {
      CHECK(row[0] == 0.0);
      CHECK(std::is_sorted(row.begin(), row.end()));
    }
  }
  SUBCASE("grid must start at a") {
    const Grid off = make_uniform_grid(0.1, 0.5, 11);
    CHECK_THROWS_AS(compute_moments_left(p, sample(off, [](double) { return 1.0; }), 2), DomainError);
  }
}

TEST_CASE("moment rule converges at third order on a non-polynomial integrand") {
  // Reference by adaptive quadrature in s: V_k = (1/rho) int_{a^rho}^{t^rho} (s - a^rho)^(k-1) cos(s^(1/rho)) ds.
  const double rho = 1.3;
  const double a = 0.2;
  const auto p = make_params(0.7, rho, a, 1.0);
  const int k = 3;
  auto reference = [&](double t) {
    const double lo = std::pow(a, rho);
    return integrate_adaptive([&](double s) { return std::pow(s - lo, k - 1) * std::cos(std::pow(s, 1 / rho)); },
                              lo, std::pow(t, rho), {1e-14, 1e-16, 50}) / rho;
  };
  const double ref = reference(1.0);
  double prev = 0.0;
  for (std::size_t n : {41u, 81u, 161u}) {
    const Grid g = make_uniform_grid(a, 1.0, n);
    const auto m = compute_moments_left(p, sample(g, [](double t) { return std::cos(t); }), k);
    const double err = std::abs(m.V[k - 1].back() - ref);
    if (prev > 0.0) {
      CHECK(prev / err > 6.0);
    }
    prev = err;
  }
}

TEST_CASE("right moments") {
  const double rho = 0.7;
  const auto p = make_params(0.9, rho, 0.0, 1.0);
  const Grid g = make_uniform_grid(0.0, 1.0, 301);
  const double b_pow = 1.0;
  // x = (b^rho - t^rho)^m: W_k = (b^rho - t^rho)^(k+m) / (rho (k+m))
  for (int m : {0, 1, 2}) {
    const auto w = compute_moments_right(
        p, sample(g, [&](double t) { return std::pow(b_pow - std::pow(t, rho), m); }), 8);
    for (int k = 1; k <= 8; ++k) {
      const auto& row = w.V[static_cast<std::size_t>(k - 1)];
      CHECK(row.back() == 0.0);
      for (std::size_t i : {0u, 150u, 299u}) {
        const double gap = b_pow - std::pow(g[i], rho);
        CHECK(row[i] == doctest::Approx(std::pow(gap, k + m) / (rho * (k + m))).epsilon(1e-10));
      }
    }
  }
  const Grid short_grid = make_uniform_grid(0.0, 0.9, 11);
  CHECK_THROWS_AS(compute_moments_right(p, sample(short_grid, [](double) { return 1.0; }), 2), DomainError);
}

TEST_CASE("two-point grids fall back to the linear rule") {
  const auto p = make_params(1.0, 1.0, 0.0, 1.0);
  const Grid g = make_uniform_grid(0.0, 1.0, 2);
  const auto m = compute_moments_left(p, SampledFunction(g, {1.0, 3.0}), 1);
  CHECK(m.V[0][1] == doctest::Approx(2.0).epsilon(1e-15));  // trapezoid
}

TEST_CASE("alpha = rho = 1 reproduces the cumulative three-point rule exactly") {
  // Independent cumulative rule: interval [t_{i-1}, t_i] of a quadratic through
  // (i-2, i-1, i) is h/12 (-x_{i-2} + 8 x_{i-1} + 5 x_i); the first interval
  // uses (0, 1, 2): h/12 (5 x_0 + 8 x_1 - x_2).
  const auto p = make_params(1.0, 1.0, 0.0, 2.0);
  const Grid g = make_uniform_grid(0.0, 2.0, 257);
  const SampledFunction x = sample(g, [](double t) { return std::exp(-t) * std::sin(5 * t) + t; });
  const auto r = approx_left(p, x, 7);
  const double h = g.spacing();
  double cumulative = 0.0;
  double scale = 0.0;
  CHECK(r.values[0] == 0.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    cumulative += i == 1 ? h / 12 * (5 * x[0] + 8 * x[1] - x[2])
                         : h / 12 * (-x[i - 2] + 8 * x[i - 1] + 5 * x[i]);
    scale = std::max(scale, std::abs(cumulative));
    CHECK(std::abs(r.values[i] - cumulative) <= 1e-14 * std::max(1.0, scale) * 4);
  }
}

TEST_CASE("approx_left against closed forms") {
  SUBCASE("alpha = 0.5, rho = 1, x = t^2, N = 50") {
    const auto p = make_params(0.5, 1.0, 0.0, 0.5);
    const Grid g = make_uniform_grid(0.0, 0.5, 501);
    const double M = 1.0;  // |x'| = 2t <= 1
    const auto r = approx_left(p, sample(g, [](double t) { return t * t; }), 50, M);
    REQUIRE(r.error_envelope);
    CHECK(r.N == 50);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double err = std::abs(r.values[i] - exact_left_power(p, 2.0, g[i]));
      CHECK(err <= (*r.error_envelope)[i] + 1e-6);
    }
    CHECK(r.values[0] == 0.0);
  }
  SUBCASE("Figure-1 style: error falls as N grows for alpha = 0.1, rho = 2.3") {
    const auto p = make_params(0.1, 2.3, 0.0, 0.5);
    const Grid g = make_uniform_grid(0.0, 0.5, 501);
    const auto x = sample(g, [](double t) { return std::pow(t, 4.6); });
    auto exact = [&](double t) { return exact_testfn_integral(p, t); };
    double prev = INFINITY;
    for (int N : {2, 6, 20, 64}) {
      const double err = max_abs_error(approx_left(p, x, N), exact);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("approx_left rate in N on the test function") {
  const Grid g = make_uniform_grid(0.0, 0.5, 501);
  for (auto [alpha, rho] : {std::pair{0.1, 2.3}, std::pair{0.9, 0.2}, std::pair{1.5, 0.8}, std::pair{2.4, 0.1}}) {
    const auto p = make_params(alpha, rho, 0.0, 0.5);
    const auto x = sample(g, [rho = rho](double t) { return std::pow(t, 2 * rho); });
    auto exact = [&](double t) { return exact_testfn_integral(p, t); };
    for (int N : {8, 16, 32}) {
      const double e1 = max_abs_error(approx_left(p, x, N), exact);
      const double e2 = max_abs_error(approx_left(p, x, 2 * N), exact);
      CHECK(std::log2(e1 / e2) >= 0.5 * alpha);
    }
  }
}

TEST_CASE("approx_left agrees with the oracle on cos") {
  const auto p = make_params(0.7, 1.3, 0.0, 0.5);
  const Grid g = make_uniform_grid(0.0, 0.5, 501);
  const double M = std::sin(0.5);
  const auto r = approx_left(p, sample(g, [](double t) { return std::cos(t); }), 60, M);
  for (std::size_t i : {100u, 250u, 500u}) {
    const double ref = oracle_left(p, [](double t) { return std::cos(t); }, g[i]);
    CHECK(std::abs(r.values[i] - ref) <= (*r.error_envelope)[i] + 1e-4);
  }
}

TEST_CASE("approx_right") {
  SUBCASE("zero integrand") {
    const auto p = make_params(1.6, 0.7, 0.0, 1.0);
    const Grid g = make_uniform_grid(0.0, 1.0, 11);
    const auto r = approx_right(p, sample(g, [](double) { return 0.0; }), 5);
    CHECK(std::all_of(r.values.begin(), r.values.end(), [](double v) { return v == 0.0; }));
    CHECK_FALSE(r.error_envelope);
  }
  SUBCASE("alpha = rho = 1 integrates over [t, b]") {
    const auto p = make_params(1.0, 1.0, 0.0, 1.0);
    const Grid g = make_uniform_grid(0.0, 1.0, 201);
    const auto r = approx_right(p, sample(g, [](double t) { return std::exp(t); }), 3);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(r.values[i] == doctest::Approx(std::exp(1.0) - std::exp(g[i])).epsilon(1e-8));
    }
    CHECK(r.values.back() == 0.0);
  }
  SUBCASE("alpha = 0.5, rho = 2, x = 1 - t^2, N = 50") {
    const auto p = make_params(0.5, 2.0, 0.0, 1.0);
    const Grid g = make_uniform_grid(0.0, 1.0, 501);
    const double M = 2.0;
    const auto r = approx_right(p, sample(g, [](double t) { return 1.0 - t * t; }), 50, M);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double err = std::abs(r.values[i] - exact_right_power(p, 1.0, g[i]));
      CHECK(err <= (*r.error_envelope)[i] + 1e-6);
    }
    CHECK(std::abs(r.values[0] - 0.53192304053524357) <= 1e-3);
  }
}

TEST_CASE("left and right approximations mirror each other for symmetric data at rho = 1") {
  const auto p = make_params(0.6, 1.0, 0.0, 1.0);
  const Grid g = make_uniform_grid(0.0, 1.0, 401);
  const auto x = sample(g, [](double t) { return std::cos(3 * (t - 0.5)); });
  const auto left = approx_left(p, x, 40);
  const auto right = approx_right(p, x, 40);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(right.values[i] == doctest::Approx(left.values[g.size() - 1 - i]).epsilon(1e-10));
  }
}

TEST_CASE("error_bound") {
  const auto p = make_params(0.5, 1.0, 0.0, 1.0);
  CHECK(error_bound(p, 1.0, 0.0, 10) == 0.0);
  CHECK(error_bound(p, 1.0, 1.0, 10, Side::right) == 0.0);
  // (1/Gamma(1.5)) 0.5^0.5 0.5 e^0.75 / (0.5 sqrt(10))
  CHECK(error_bound(p, 1.0, 0.5, 10) == doctest::Approx(0.53414715910326586).epsilon(1e-14));
  for (double alpha : {0.1, 0.9, 2.4}) {
    const auto q = make_params(alpha, 0.8, 0.0, 0.5);
    CHECK(error_bound(q, 3.0, 0.4, 16) / error_bound(q, 3.0, 0.4, 1) ==
          doctest::Approx(std::pow(16.0, -alpha)).epsilon(1e-13));
    double prev = INFINITY;
    for (int N = 1; N <= 64; ++N) {
      const double b = error_bound(q, 3.0, 0.4, N);
      CHECK(b < prev);
      prev = b;
    }
  }
  CHECK_THROWS_AS(error_bound(p, -1.0, 0.5, 10), DomainError);
  CHECK_THROWS_AS(error_bound(p, 1.0, 0.5, 0), DomainError);
}
