#pragma once

/// \file specfun.hpp
/// \brief Associated Legendre, cylindrical Bessel and spherical Bessel
/// functions for real arguments.
///
/// Conventions: P_n^m follows Abramowitz & Stegun with the Condon-Shortley
/// phase, so P_1^1(x) = -sqrt(1 - x^2). Domain violations throw
/// std::domain_error; results that cannot be represented throw
/// std::overflow_error. Everything here is a pure function.

#include <vector>

namespace lbk {

/// Largest degree accepted by factorial_ratio.
inline constexpr int kFactorialRatioMaxN = 170;

/// Below this argument the spherical Bessel functions switch to their
/// Taylor series, regardless of order.
inline constexpr double kSphericalTaylorThreshold = 1e-2;

/// P_n^m(x) for n >= 0, -n <= m <= n, |x| <= 1.
///
/// The P_m^m seed comes from the closed product (-1)^m (2m-1)!! (1-x^2)^{m/2},
/// then the degree is raised by the three-term recurrence in n, which is
/// stable for fixed m. Negative orders go through
/// P_n^{-m} = (-1)^m (n-m)!/(n+m)! P_n^m.
double assoc_legendre(int n, int m, double x);
long double assoc_legendre(int n, int m, long double x);

/// J_m(x) for integer m of either sign and x >= 0.
///
/// A power series is used while (x/2)^2 <= |m| + 1 or x < 2, where the
/// series has no damaging cancellation; otherwise Miller's downward
/// recurrence normalised with J_0 + 2 sum J_{2k} = 1. J_{-m} = (-1)^m J_m.
double bessel_j(int m, double x);
long double bessel_j(int m, long double x);

/// j_n(x) for n >= 0, x >= 0. j_0(0) = 1, j_n(0) = 0 for n >= 1.
double spherical_bessel_j(int n, double x);

/// j_0(x) ... j_{n_max}(x) from a single downward sweep.
std::vector<double> spherical_bessel_j_sequence(int n_max, double x);

/// j_n'(x). Uses (n j_{n-1} - (n+1) j_{n+1}) / (2n+1), which is the same as
/// j_{n-1} - (n+1)/x j_n but has no 1/x at small arguments.
double spherical_bessel_j_prime(int n, double x);

/// j_n(x) / x^p for 0 <= p <= n, finite at x = 0 where it equals
/// 1/(2n+1)!! when p == n and 0 otherwise.
double spherical_bessel_ratio(int n, int p, double x);

/// (n+|m|)! / (n-|m|)! as a running product, for n <= 170.
double factorial_ratio(int n, int m);

namespace detail {

/// j_n(x) (2n+1)!! / x^n summed from its Taylor series. Accurate while
/// x^2 < 2n + 3, where successive terms at least halve.
double spherical_bessel_scaled_series(int n, double x);

/// True when spherical_bessel_scaled_series is the preferred route.
bool spherical_series_regime(int n, double x);

/// P_n^m with the convention P_n^m = 0 whenever |m| > n or n < 0, which is
/// what the recurrences need at the edges of the index triangle.
double assoc_legendre_or_zero(int n, int m, double x);

}  // namespace detail

}  // namespace lbk
