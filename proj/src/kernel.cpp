#include "lbk/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lbk/specfun.hpp"

namespace lbk {

void IntegralParams::validate() const {
  if (n < 0) {
    throw std::domain_error("n must be >= 0, got " + std::to_string(n));
  }
  if (std::abs(m) > n) {
    throw std::domain_error("|m| must be <= n, got n=" + std::to_string(n) +
                            " m=" + std::to_string(m));
  }
  if (!std::isfinite(alpha) || alpha < 0 || alpha > std::numbers::pi) {
    throw std::domain_error("alpha must lie in [0, pi] radians, got " +
                            std::to_string(alpha));
  }
  if (!std::isfinite(R) || R < 0) {
    throw std::domain_error("R must be finite and >= 0, got " + std::to_string(R));
  }
}

ComplexScalar i_phase(int k) noexcept {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

ComplexScalar closed_form_I(const IntegralParams& p) {
  p.validate();
  return 2.0 * i_phase(p.n - p.m) * assoc_legendre(p.n, p.m, std::cos(p.alpha)) *
         spherical_bessel_j(p.n, p.R);
}

ComplexScalar closed_form_dI_dR(const IntegralParams& p) {
  p.validate();
  return 2.0 * i_phase(p.n - p.m) * assoc_legendre(p.n, p.m, std::cos(p.alpha)) *
         spherical_bessel_j_prime(p.n, p.R);
}

ComplexScalar lock_closed_form(int n, int m, double R, Sign sign) {
  const int k = std::abs(m);
  // (-i)^j == i^{-j}
  const int phase = static_cast<int>(sign) * (n + k);
  return 2.0 * i_phase(phase) * factorial_ratio(n, k) *
         spherical_bessel_ratio(n, k, R);
}

double poisson_closed_form(int s, double x) {
  if (s < 0) {
    throw std::domain_error("poisson_closed_form: s must be >= 0, got " +
                            std::to_string(s));
  }
  if (s > kPoissonMaxOrder) {
    throw std::overflow_error("poisson_closed_form: s is capped at 150, got " +
                              std::to_string(s));
  }
  if (!std::isfinite(x) || x < 0) {
    throw std::domain_error("poisson_closed_form: x must be finite and >= 0");
  }
  if (x == 0 || detail::spherical_series_regime(s, x)) {
    // 2^{s+1} s! / (2s+1)!! times the normalised Taylor sum.
    double c = 2;
    for (int k = 1; k <= s; ++k) c *= (2.0 * k) / (2.0 * k + 1.0);
    return x == 0 ? c : c * detail::spherical_bessel_scaled_series(s, x);
  }
  double c = 2;
  for (int k = 1; k <= s; ++k) c *= (2.0 * k) / x;
  return c * spherical_bessel_j(s, x);
}

namespace {

double mult_theorem_sum(double R, double alpha, int terms) {
  if (!std::isfinite(R) || R < 0) {
    throw std::domain_error("series: R must be finite and >= 0");
  }
  if (!std::isfinite(alpha) || alpha < 0 || alpha >= std::numbers::pi / 2) {
    throw std::domain_error(
        "series: alpha must lie in [0, pi/2); the coefficients divide by cos(alpha)");
  }
  if (terms < 0 || terms > kMaxSeriesTerms) {
    throw std::domain_error("series: term count must lie in [0, 200], got " +
                            std::to_string(terms));
  }
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const auto js = spherical_bessel_j_sequence(terms, R * c);
  const double step = -s * s * R / (2.0 * c);
  double coeff = 1;
  double sum = js[0];
  for (int k = 1; k <= terms; ++k) {
    coeff *= step / k;
    sum += coeff * js[k];
  }
  return sum;
}

}  // namespace

double mult_theorem_partial(double R, double alpha, int terms) {
  return mult_theorem_sum(R, alpha, terms);
}

ComplexScalar i00_series_partial(double R, double alpha, int terms) {
  return {2.0 * mult_theorem_sum(R, alpha, terms), 0.0};
}

}  // namespace lbk
