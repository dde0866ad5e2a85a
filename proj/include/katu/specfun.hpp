#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace katu {

/// Gamma function for real x (Lanczos, reflected for x < 1/2).
/// Throws PoleError at 0, -1, -2, ...
double gamma_fn(double x);

/// Coefficients c_k = Gamma(k - alpha) / (Gamma(-alpha) k!) of the binomial
/// series (1 - u)^alpha = sum_k c_k u^k, for k = 0..N.
class BinomCoeffs {
public:
  double alpha() const noexcept { return alpha_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t k) const noexcept { return coeffs_[k]; }
  std::size_t order() const noexcept { return coeffs_.size() - 1; }

  friend BinomCoeffs binom_coeffs(double alpha, int N);

private:
  BinomCoeffs(double alpha, std::vector<double> coeffs)
      : alpha_(alpha), coeffs_(std::move(coeffs)) {}

  double alpha_;
  std::vector<double> coeffs_;
};

/// Builds c_0..c_N from c_0 = 1, c_k = c_{k-1} (k - 1 - alpha) / k.
/// Never touches Gamma, so integer alpha gives a terminating series.
BinomCoeffs binom_coeffs(double alpha, int N);

}  // namespace katu
