#pragma once

// Elementary functions over double, long double and __float128 under one
// spelling, for the templates in specfun_impl.hpp and oracle.cpp.

#include <cmath>
#include <limits>

#include <quadmath.h>

namespace lbk::math {

using quad = __float128;

template <class Real>
Real epsilon() {
  if constexpr (std::is_same_v<Real, quad>) {
    return ldexpq(quad(1), 1 - FLT128_MANT_DIG);
  } else {
    return std::numeric_limits<Real>::epsilon();
  }
}

inline double abs(double x) { return std::fabs(x); }
inline long double abs(long double x) { return std::fabs(x); }
inline quad abs(quad x) { return fabsq(x); }

inline double sqrt(double x) { return std::sqrt(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline quad sqrt(quad x) { return sqrtq(x); }

inline double cos(double x) { return std::cos(x); }
inline long double cos(long double x) { return std::cos(x); }
inline quad cos(quad x) { return cosq(x); }

inline double sin(double x) { return std::sin(x); }
inline long double sin(long double x) { return std::sin(x); }
inline quad sin(quad x) { return sinq(x); }

template <class Real>
Real pi() {
  if constexpr (std::is_same_v<Real, quad>) {
    return acosq(quad(-1));
  } else {
    return static_cast<Real>(3.141592653589793238462643383279502884L);
  }
}

}  // namespace lbk::math
