#pragma once

/// \file verify.hpp
/// \brief Numerical checks of the closed forms against quadrature, and
/// residuals of the recurrences and series that connect them.
///
/// Failures are data: every check returns a report and none of them throws
/// for a numerical mismatch. Invalid arguments still throw.

#include <cstdint>
#include <vector>

#include "lbk/kernel.hpp"
#include "lbk/oracle.hpp"

namespace lbk {

struct SweepConfig {
  std::uint64_t seed = 42;
  int cases = 1000;
  int n_max = 20;
  double R_max = 50.0;
  double alpha_margin = 0.05;
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

struct CaseReport {
  IntegralParams params;
  ComplexScalar closed;
  ComplexScalar oracle;
  double abs_err = 0.0;
  /// abs_err / (1 + |closed|)
  double rel_err = 0.0;
  bool passed = false;
  bool oracle_converged = false;
};

struct SweepReport {
  SweepConfig config;
  int total = 0;
  std::vector<CaseReport> failures;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double wall_time_s = 0.0;
};

/// Compares closed_form_I against integrate_I.
/// passed = oracle converged and (abs_err <= abs_tol or rel_err <= rel_tol).
CaseReport check_identity(const IntegralParams& p, const QuadratureSpec& q,
                          double abs_tol, double rel_tol);

/// The parameter tuples a sweep visits, in case order.
///
/// Draws come from std::mt19937_64 seeded with cfg.seed (the engine's output
/// sequence is fixed by the C++ standard). Per case, four 64-bit outputs u
/// are consumed in order n, m, alpha, R and mapped with portable arithmetic:
///   unit(u)  = (u >> 11) * 2^-53                      in [0, 1)
///   n        = floor(unit * (n_max + 1))
///   m        = -n + floor(unit * (2n + 1))
///   alpha    = margin + unit * (pi - 2 margin)
///   R        = R_max * (1 - unit)                     in (0, R_max]
std::vector<IntegralParams> sweep_cases(const SweepConfig& cfg);

/// Runs check_identity over sweep_cases(cfg). Cases are evaluated on up to
/// `workers` threads; the report is assembled in case order and is
/// independent of the worker count. Only wall_time_s varies between runs.
SweepReport sweep_random(const SweepConfig& cfg, const QuadratureSpec& q,
                         int workers = 1);

struct Residual {
  double value = 0.0;
  bool converged = true;
};

/// Residual of the five-term recurrence in (n, m) evaluated with
/// quadrature values of I, normalised by the largest term modulus.
/// Terms with |m'| > n' are identically zero and enter as such.
/// Requires 1 <= m <= n - 1, 0 < alpha < pi, R > 0.
Residual check_recurrence_I(int n, int m, double alpha, double R,
                            const QuadratureSpec& q);

/// The same residual with every term taken from closed_form_I.
double check_recurrence_F(int n, int m, double alpha, double R);

struct DerivativeCheck {
  double fd_err = 0.0;    ///< |central difference of closed_form_I - closed_form_dI_dR|
  double quad_err = 0.0;  ///< |integrate_dI_dR - closed_form_dI_dR|
  double scale = 1.0;     ///< 1 + |closed_form_dI_dR|
  bool converged = true;
};

/// Requires R > h > 0.
DerivativeCheck check_derivative(const IntegralParams& p, const QuadratureSpec& q,
                                 double h);

struct SpreadCheck {
  double max_spread = 0.0;
  bool converged = true;
};

/// Largest pairwise |I_0^0(alpha_i) - I_0^0(alpha_j)| by quadrature.
SpreadCheck check_alpha_independence(double R, const std::vector<double>& alphas,
                                     const QuadratureSpec& q);

/// Arguments for check_specfun_recurrences.
struct SpecfunGrid {
  /// Legendre arguments in [-1, 1].
  std::vector<double> legendre_x;
  /// Angles for the 1/sin(alpha) form, inside (0, pi).
  std::vector<double> alphas;
  /// Bessel arguments in (0, 100].
  std::vector<double> bessel_x;

  /// cos of 41 equally spaced angles on [0, pi] (endpoints included),
  /// 29 angles on [0.1, pi - 0.1] and 80 Bessel arguments on [0.05, 100].
  static SpecfunGrid standard();
};

struct SpecfunResiduals {
  double legendre_sin_form = 0.0;    ///< (2n+1) sin P_n^m raise/lower relations
  double bessel_three_term = 0.0;    ///< J_m = x/(2m) (J_{m-1} + J_{m+1})
  double legendre_alpha_form = 0.0;  ///< (2m / sin a) P_n^m(cos a) relations
  double spherical_three_term = 0.0; ///< j_n = x/(2n+1) (j_{n-1} + j_{n+1})

  double max() const;
};

/// Maximum normalised residual of each family for degrees/orders up to
/// n_max (>= 2). Each residual is |lhs - rhs| divided by the largest term
/// magnitude, or 0 when every term vanishes.
SpecfunResiduals check_specfun_recurrences(int n_max, const SpecfunGrid& grid);

/// max over the grid of |mult_theorem_partial - j_0(R)| and
/// |i00_series_partial - 2 j_0(R)|. Grids lie in [0, 10] x [0, pi/4].
double check_mult_theorem(const std::vector<double>& R_grid,
                          const std::vector<double>& alpha_grid, int terms);

}  // namespace lbk
