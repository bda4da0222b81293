#pragma once

/// \file oracle.hpp
/// \brief Direct numerical quadrature of the integrals in kernel.hpp.
///
/// Composite Gauss-Legendre over equal panels of [0, pi]. The panel count
/// doubles until two successive estimates agree to
/// max(abs_tol, rel_tol |value|).
///
/// The integrand of I_n^m can exceed the integral by ten or more orders of
/// magnitude, so integrands are evaluated and summed in long double. When
/// the error estimate stops shrinking for two consecutive doublings the
/// rounding floor has been reached; the integral is then redone in
/// __float128 before non-convergence is reported.
///
/// Summation order is fixed (nodes left to right within a panel, panels left
/// to right), so results do not depend on how calls are scheduled.

#include <complex>
#include <functional>
#include <vector>

#include "lbk/kernel.hpp"

namespace lbk {

struct QuadratureSpec {
  /// Lower bound on the starting panel count; each integral raises it to
  /// its own oscillation-based seed.
  int base_panels = 8;
  int nodes_per_panel = 32;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  /// Maximum number of panel doublings.
  int max_refinements = 12;

  /// Throws std::invalid_argument on non-positive fields or tolerances >= 1.
  void validate() const;
};

struct QuadResult {
  ComplexScalar value;
  double est_error = 0.0;
  int panels_used = 0;
  bool converged = false;
  /// The value comes from the __float128 retry.
  bool extended_precision = false;
};

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

/// Rule of the given order, computed once and cached.
const GaussRule& gauss_legendre_rule(int order);

using Integrand = std::function<std::complex<long double>(long double)>;

/// Composite rule with a fixed number of equal panels on [a, b].
std::complex<long double> integrate_fixed(const Integrand& f, double a, double b,
                                          int panels, int nodes_per_panel);

/// Panel doubling from max(q.base_panels, seed_panels) until converged,
/// q.max_refinements doublings have been spent, or the estimate stalls.
/// Long double only.
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              int seed_panels, const QuadratureSpec& q);

/// Starting panel count for an integrand oscillating like exp(i R cos t)
/// times a degree-n polynomial in cos t: max(8, ceil(R/pi) + n).
int oscillation_panels(double R, int n);

/// I_n^m by quadrature of its defining integrand.
QuadResult integrate_I(const IntegralParams& p, const QuadratureSpec& q = {});

/// dI_n^m/dR, integrating the analytic R-derivative of the integrand with
/// J_m' = (J_{m-1} - J_{m+1}) / 2.
QuadResult integrate_dI_dR(const IntegralParams& p, const QuadratureSpec& q = {});

/// int_0^pi sin^{|m|+1}(t) exp(+-i R cos t) P_n^{|m|}(cos t) dt.
QuadResult integrate_lock(int n, int m, double R, Sign sign,
                          const QuadratureSpec& q = {});

/// int_0^pi sin(t) exp(i x cos t) sin^{2s}(t) dt.
QuadResult integrate_poisson_exp(int s, double x, const QuadratureSpec& q = {});

/// int_0^pi sin(t) sin(x cos t) sin^{2s}(t) dt, which vanishes by parity.
/// The value is returned in the real part.
QuadResult integrate_parity_null(int s, double x, const QuadratureSpec& q = {});

}  // namespace lbk
