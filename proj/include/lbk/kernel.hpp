#pragma once

/// \file kernel.hpp
/// \brief Closed-form values of the Bessel-times-Legendre integral family
///
///   I_n^m(alpha, R) = int_0^pi sin(t) exp(i R cos(alpha) cos(t))
///                       P_n^m(cos t) J_m(R sin(alpha) sin(t)) dt
///                   = 2 i^{n-m} P_n^m(cos alpha) j_n(R),
///
/// together with its R-derivative, the on-axis (Lock) integral, the
/// Poisson-type integral of sin^{2s+1} and the two series used to reduce
/// I_0^0 to 2 j_0(R).

#include <complex>

namespace lbk {

using ComplexScalar = std::complex<double>;

/// The (n, m, alpha, R) tuple that selects one member of the integral family.
/// alpha is an angle in radians on [0, pi]; R is the dimensionless radius kr.
struct IntegralParams {
  int n = 0;
  int m = 0;
  double alpha = 0.0;
  double R = 0.0;

  /// Throws std::domain_error naming the first violated constraint.
  void validate() const;
};

/// Sign of the exponent in the on-axis integral exp(+-i R cos t).
enum class Sign : int { Plus = 1, Minus = -1 };

/// Default and hard cap on the number of series terms.
inline constexpr int kDefaultSeriesTerms = 40;
inline constexpr int kMaxSeriesTerms = 200;

/// Largest s accepted by poisson_closed_form.
inline constexpr int kPoissonMaxOrder = 150;

/// i^k by table lookup on k mod 4.
ComplexScalar i_phase(int k) noexcept;

/// 2 i^{n-m} P_n^m(cos alpha) j_n(R).
ComplexScalar closed_form_I(const IntegralParams& p);

/// 2 i^{n-m} P_n^m(cos alpha) j_n'(R), the R-derivative of closed_form_I.
ComplexScalar closed_form_dI_dR(const IntegralParams& p);

/// 2 (+-i)^{n+|m|} (n+|m|)!/(n-|m|)! j_n(R)/R^{|m|}; finite at R = 0.
ComplexScalar lock_closed_form(int n, int m, double R, Sign sign);

/// 2^{s+1} s! j_s(x) / x^s, the value of
/// int_0^pi sin(t) exp(i x cos t) sin^{2s}(t) dt. Finite at x = 0.
double poisson_closed_form(int s, double x);

/// Partial sum over s = 0..terms of
///   sum_s (-1)^s / 2^s (sin a)^{2s} / (s! cos^s a) R^s j_s(R cos a),
/// which converges to j_0(R). Requires 0 <= alpha < pi/2.
double mult_theorem_partial(double R, double alpha, int terms = kDefaultSeriesTerms);

/// The same series scaled by 2, i.e. the expansion of I_0^0 that converges
/// to 2 j_0(R). The imaginary part is always zero.
ComplexScalar i00_series_partial(double R, double alpha,
                                 int terms = kDefaultSeriesTerms);

}  // namespace lbk
