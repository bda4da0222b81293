#include "lbk/specfun.hpp"

#include "specfun_impl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lbk {

namespace {

using detail::kMillerSeed;
using detail::kRescaleAbove;
using detail::kRescaleBy;
using detail::miller_start;
using detail::require_nonnegative;

void require_spherical_order(int n, const char* what) {
  if (n < 0) {
    throw std::domain_error(std::string(what) + ": order must be >= 0, got " +
                            std::to_string(n));
  }
}

// x^k / (2k+1)!! for k = 0..n, built as a running product.
double power_over_double_factorial(int n, double x) {
  double pf = 1;
  for (int k = 1; k <= n; ++k) pf *= x / (2 * k + 1);
  return pf;
}

}  // namespace

double assoc_legendre(int n, int m, double x) { return detail::legendre(n, m, x); }

long double assoc_legendre(int n, int m, long double x) {
  return detail::legendre(n, m, x);
}

double bessel_j(int m, double x) { return detail::bessel(m, x); }

long double bessel_j(int m, long double x) { return detail::bessel(m, x); }

namespace detail {

double spherical_bessel_scaled_series(int n, double x) {
  const double q = -x * x / 2;
  double term = 1;
  double sum = 1;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<double>(k) * (2 * n + 2 * k + 1));
    sum += term;
    if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

bool spherical_series_regime(int n, double x) {
  return x < kSphericalTaylorThreshold || x * x < 2.0 * n + 3.0;
}

double assoc_legendre_or_zero(int n, int m, double x) {
  if (n < 0 || std::abs(m) > n) return 0.0;
  return assoc_legendre(n, m, x);
}

}  // namespace detail

std::vector<double> spherical_bessel_j_sequence(int n_max, double x) {
  require_spherical_order(n_max, "spherical_bessel_j_sequence");
  require_nonnegative(x, "spherical_bessel_j_sequence");
  std::vector<double> seq(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (x == 0) {
    seq[0] = 1.0;
    return seq;
  }
  if (x < kSphericalTaylorThreshold) {
    double pf = 1;
    for (int k = 0; k <= n_max; ++k) {
      if (k > 0) pf *= x / (2 * k + 1);
      seq[k] = pf * detail::spherical_bessel_scaled_series(k, x);
    }
    return seq;
  }

  const int start = miller_start(std::max(n_max, 1), x);
  double above = 0;
  double cur = kMillerSeed;
  double f1 = 0;
  for (int k = start; k > 0; --k) {
    if (k <= n_max) seq[k] = cur;
    if (k == 1) f1 = cur;
    const double below = (2 * k + 1) / x * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      above *= kRescaleBy;
      f1 *= kRescaleBy;
      for (int i = k; i <= n_max; ++i) seq[i] *= kRescaleBy;
    }
  }
  seq[0] = cur;

  // Normalise against whichever of j_0, j_1 is larger in magnitude so the
  // zeros of either one never leak into the result.
  const double j0 = std::sin(x) / x;
  const double j1 = (j0 - std::cos(x)) / x;
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / cur : j1 / f1;
  for (double& v : seq) v *= scale;
  seq[0] = j0;
  return seq;
}

double spherical_bessel_j(int n, double x) {
  require_spherical_order(n, "spherical_bessel_j");
  require_nonnegative(x, "spherical_bessel_j");
  if (x == 0) return n == 0 ? 1.0 : 0.0;
  if (x < kSphericalTaylorThreshold) {
    return power_over_double_factorial(n, x) *
           detail::spherical_bessel_scaled_series(n, x);
  }
  if (n == 0) return std::sin(x) / x;
  return spherical_bessel_j_sequence(n, x).back();
}

double spherical_bessel_j_prime(int n, double x) {
  require_spherical_order(n, "spherical_bessel_j_prime");
  require_nonnegative(x, "spherical_bessel_j_prime");
  if (x == 0) return n == 1 ? 1.0 / 3.0 : 0.0;
  const auto seq = spherical_bessel_j_sequence(n + 1, x);
  if (n == 0) return -seq[1];
  return (n * seq[n - 1] - (n + 1) * seq[n + 1]) / (2 * n + 1);
}

double spherical_bessel_ratio(int n, int p, double x) {
  require_spherical_order(n, "spherical_bessel_ratio");
  if (p < 0 || p > n) {
    throw std::domain_error("spherical_bessel_ratio: need 0 <= p <= n, got n=" +
                            std::to_string(n) + " p=" + std::to_string(p));
  }
  require_nonnegative(x, "spherical_bessel_ratio");
  if (x == 0) {
    return p == n ? power_over_double_factorial(n, 1.0) : 0.0;
  }
  if (detail::spherical_series_regime(n, x)) {
    double pf = 1;
    for (int k = 1; k <= n; ++k) pf *= (k <= n - p ? x : 1.0) / (2 * k + 1);
    return pf * detail::spherical_bessel_scaled_series(n, x);
  }
  return spherical_bessel_j(n, x) / std::pow(x, p);
}

double factorial_ratio(int n, int m) {
  const int k = std::abs(m);
  if (n < 0 || k > n) {
    throw std::domain_error("factorial_ratio: need n >= 0 and |m| <= n, got n=" +
                            std::to_string(n) + " m=" + std::to_string(m));
  }
  if (n > kFactorialRatioMaxN) {
    throw std::overflow_error("factorial_ratio: n is capped at 170, got " +
                              std::to_string(n));
  }
  double product = 1;
  for (int i = n - k + 1; i <= n + k; ++i) product *= i;
  if (!std::isfinite(product)) {
    throw std::overflow_error("factorial_ratio: (" + std::to_string(n + k) +
                              ")!/(" + std::to_string(n - k) +
                              ")! overflows double");
  }
  return product;
}

}  // namespace lbk
