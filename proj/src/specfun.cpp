#include "katu/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "katu/errors.hpp"

namespace katu {

namespace {

// Lanczos approximation with N = 13, g ~ 6.0247, in rational form
// sum_i num_i z^i / sum_i denom_i z^i (denominator is z(z+1)...(z+11)).
// Constants are the widely used double-precision "13m53" set.
constexpr double kLanczosG = 6.024680040776729583740234375;
constexpr std::array<double, 13> kNum = {
    23531376880.41075968857200767445163675473, 42919803642.64909876895789904700198885093,
    35711959237.35566804944018545154716670596, 17921034426.03720969991975575445893111267,
    6039542586.35202800506429164430729792107,  1439720407.311721673663223072794912393972,
    248874557.8620541565114603864132294232163, 31426415.58540019438061423162831820536287,
    2876370.628935372441225409051620849613599, 186056.2653952234950402949897160456992822,
    8071.672002365816210638002902272250613822, 210.8242777515793458725097339207133627117,
    2.506628274631000270164908177133837338626};
constexpr std::array<double, 13> kDenom = {0.0,        39916800.0, 120543840.0, 150917976.0,
                                           105258076.0, 45995730.0, 13339535.0,  2637558.0,
                                           357423.0,    32670.0,    1925.0,      66.0,
                                           1.0};

double lanczos_sum(double z) {
  if (z <= 1.0) {
    double num = 0.0;
    double denom = 0.0;
    for (std::size_t i = kNum.size(); i-- > 0;) {
      num = num * z + kNum[i];
      denom = denom * z + kDenom[i];
    }
    return num / denom;
  }
  // Same ratio in powers of 1/z, which cannot overflow for large z.
  const double r = 1.0 / z;
  double num = 0.0;
  double denom = 0.0;
  for (std::size_t i = 0; i < kNum.size(); ++i) {
    num = num * r + kNum[i];
    denom = denom * r + kDenom[i];
  }
  return num / denom;
}

double lanczos_gamma(double z) {
  // Gamma(z) for z >= 1/2.
  const double zgh = z + kLanczosG - 0.5;
  // zgh^(z-1/2) is split in two so that large z does not overflow early.
  const double half_pow = std::pow(zgh, 0.5 * (z - 0.5));
  return lanczos_sum(z) * half_pow * (half_pow / std::exp(zgh));
}

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) {
    return x;
  }
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError(x);
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

BinomCoeffs binom_coeffs(double alpha, int N) {
  if (N < 0) {
    throw DomainError("N", "binomial series order must be >= 0");
  }
  std::vector<double> c(static_cast<std::size_t>(N) + 1);
  c[0] = 1.0;
  for (int k = 1; k <= N; ++k) {
    c[static_cast<std::size_t>(k)] =
        c[static_cast<std::size_t>(k - 1)] * (static_cast<double>(k - 1) - alpha) / k;
  }
  return BinomCoeffs(alpha, std::move(c));
}

}  // namespace katu
