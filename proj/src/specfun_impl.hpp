#pragma once

// Precision-generic cores of assoc_legendre and bessel_j. Shared by the
// public double/long double entry points and by the quadrature oracle,
// which also instantiates them for __float128.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "real_math.hpp"

namespace lbk::detail {

// Rescaling thresholds for the downward recurrences.
inline constexpr double kRescaleAbove = 1e250;
inline constexpr double kRescaleBy = 1e-250;
// Starting magnitude of a Miller sweep; any tiny positive value works.
inline constexpr double kMillerSeed = 1e-30;

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": non-finite argument");
  }
}

inline void require_nonnegative(double x, const char* what) {
  require_finite(x, what);
  if (x < 0) {
    throw std::domain_error(std::string(what) + ": argument must be >= 0, got " +
                            std::to_string(x));
  }
}

// First order at which a downward sweep can start so that the neglected
// dominant solution is far below double precision at every order <= top.
inline int miller_start(int top, double x) {
  return std::max(top, static_cast<int>(x)) + 20 +
         static_cast<int>(8.0 * std::cbrt(x));
}

template <class Real>
Real legendre_nonneg_order(int n, int m, Real x) {
  Real pmm = 1;
  if (m > 0) {
    const Real s = math::sqrt((1 - x) * (1 + x));
    for (int i = 1; i <= m; ++i) pmm *= -static_cast<Real>(2 * i - 1) * s;
  }
  if (n == m) return pmm;
  Real pm1 = x * static_cast<Real>(2 * m + 1) * pmm;
  for (int l = m + 2; l <= n; ++l) {
    const Real pl = (x * static_cast<Real>(2 * l - 1) * pm1 -
                     static_cast<Real>(l + m - 1) * pmm) /
                    static_cast<Real>(l - m);
    pmm = pm1;
    pm1 = pl;
  }
  return pm1;
}

template <class Real>
Real legendre(int n, int m, Real x) {
  if (n < 0 || std::abs(m) > n) {
    throw std::domain_error("assoc_legendre: need n >= 0 and |m| <= n, got n=" +
                            std::to_string(n) + " m=" + std::to_string(m));
  }
  if (!(math::abs(x) <= 1)) {
    throw std::domain_error("assoc_legendre: need |x| <= 1");
  }
  if (m >= 0) return legendre_nonneg_order(n, m, x);
  const int k = -m;
  // (n-k)!/(n+k)! as a running product.
  Real scale = 1;
  for (int i = n - k + 1; i <= n + k; ++i) scale /= static_cast<Real>(i);
  if (k % 2 == 1) scale = -scale;
  return scale * legendre_nonneg_order(n, k, x);
}

template <class Real>
Real bessel_series(int m, Real x) {
  const Real half = x / 2;
  Real term = 1;
  for (int k = 1; k <= m; ++k) term *= half / static_cast<Real>(k);
  Real sum = term;
  const Real q = -half * half;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<Real>(k) * static_cast<Real>(k + m));
    sum += term;
    if (math::abs(term) <= math::epsilon<Real>() * math::abs(sum)) {
      break;
    }
  }
  return sum;
}

template <class Real>
Real bessel_miller(int m, Real x) {
  int start = miller_start(m, static_cast<double>(x));
  start += start % 2;
  const Real two_over_x = 2 / x;
  Real above = 0;
  Real cur = kMillerSeed;
  Real norm = 0;
  Real result = 0;
  for (int k = start; k > 0; --k) {
    if (k % 2 == 0) norm += 2 * cur;
    if (k == m) result = cur;
    const Real below = static_cast<Real>(k) * two_over_x * cur - above;
    above = cur;
    cur = below;
    if (math::abs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      above *= kRescaleBy;
      norm *= kRescaleBy;
      result *= kRescaleBy;
    }
  }
  norm += cur;
  if (m == 0) result = cur;
  return result / norm;
}

template <class Real>
Real bessel(int m, Real x) {
  require_nonnegative(static_cast<double>(x), "bessel_j");
  const int order = std::abs(m);
  Real value;
  if (x == 0) {
    value = order == 0 ? 1 : 0;
  } else if (x < 2 || (x / 2) * (x / 2) <= static_cast<Real>(order + 1)) {
    value = bessel_series(order, x);
  } else {
    value = bessel_miller(order, x);
  }
  return (m < 0 && order % 2 == 1) ? -value : value;
}

}  // namespace lbk::detail
