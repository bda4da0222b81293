#include "lbk/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "lbk/specfun.hpp"

namespace lbk {

namespace {

double unit_interval(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

int uniform_index(std::mt19937_64& gen, int count) {
  return std::min(count - 1, static_cast<int>(unit_interval(gen) * count));
}

// |lhs - sum(terms)| / max(|lhs|, |terms|...), 0 when everything vanishes.
template <class T>
double normalized_residual(T lhs, std::initializer_list<T> terms) {
  T rhs = 0;
  double largest = std::abs(lhs);
  for (const T& t : terms) {
    rhs += t;
    largest = std::max(largest, static_cast<double>(std::abs(t)));
  }
  if (largest == 0) return 0.0;
  return std::abs(lhs - rhs) / largest;
}

// Five-term recurrence in (n, m); `value(n', m')` must return 0 for |m'| > n'.
template <class F>
double recurrence_residual(int n, int m, double alpha, double R, F&& value) {
  const double pref = R * std::sin(alpha) / (2.0 * m * (2 * n + 1));
  const ComplexScalar lhs = value(n, m);
  const ComplexScalar t1 = pref * double((n - m + 1) * (n - m + 2)) * value(n + 1, m - 1);
  const ComplexScalar t2 = -pref * double((n + m) * (n + m - 1)) * value(n - 1, m - 1);
  const ComplexScalar t3 = pref * value(n - 1, m + 1);
  const ComplexScalar t4 = -pref * value(n + 1, m + 1);
  return normalized_residual(lhs, {t1, t2, t3, t4});
}

void require_interior(int n, int m, double alpha, double R) {
  if (m < 1 || m > n - 1) {
    throw std::domain_error("recurrence check needs 1 <= m <= n - 1");
  }
  if (!(alpha > 0 && alpha < std::numbers::pi)) {
    throw std::domain_error("recurrence check needs 0 < alpha < pi");
  }
  if (!(R > 0) || !std::isfinite(R)) {
    throw std::domain_error("recurrence check needs R > 0");
  }
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = a + (b - a) * k / (count - 1);
  return out;
}

}  // namespace

void SweepConfig::validate() const {
  if (cases < 1) throw std::invalid_argument("cases must be >= 1");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (!(R_max > 0) || !std::isfinite(R_max)) {
    throw std::invalid_argument("R_max must be finite and > 0");
  }
  if (!(alpha_margin > 0 && alpha_margin < std::numbers::pi / 2)) {
    throw std::invalid_argument("alpha_margin must lie in (0, pi/2)");
  }
  if (!(abs_tol > 0) || !(rel_tol > 0)) {
    throw std::invalid_argument("tolerances must be > 0");
  }
}

CaseReport check_identity(const IntegralParams& p, const QuadratureSpec& q,
                          double abs_tol, double rel_tol) {
  CaseReport r;
  r.params = p;
  r.closed = closed_form_I(p);
  const QuadResult quad = integrate_I(p, q);
  r.oracle = quad.value;
  r.oracle_converged = quad.converged;
  r.abs_err = std::abs(r.closed - r.oracle);
  r.rel_err = r.abs_err / (1.0 + std::abs(r.closed));
  r.passed = r.oracle_converged && (r.abs_err <= abs_tol || r.rel_err <= rel_tol);
  return r;
}

std::vector<IntegralParams> sweep_cases(const SweepConfig& cfg) {
  cfg.validate();
  std::mt19937_64 gen(cfg.seed);
  std::vector<IntegralParams> out;
  out.reserve(cfg.cases);
  const double span = std::numbers::pi - 2 * cfg.alpha_margin;
  for (int i = 0; i < cfg.cases; ++i) {
    IntegralParams p;
    p.n = uniform_index(gen, cfg.n_max + 1);
    p.m = -p.n + uniform_index(gen, 2 * p.n + 1);
    p.alpha = cfg.alpha_margin + unit_interval(gen) * span;
    p.R = cfg.R_max * (1.0 - unit_interval(gen));
    out.push_back(p);
  }
  return out;
}

SweepReport sweep_random(const SweepConfig& cfg, const QuadratureSpec& q, int workers) {
  const auto start = std::chrono::steady_clock::now();
  const auto cases = sweep_cases(cfg);
  q.validate();
  std::vector<CaseReport> reports(cases.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      reports[i] = check_identity(cases[i], q, cfg.abs_tol, cfg.rel_tol);
    }
  };
  const int threads = std::clamp(workers, 1, static_cast<int>(cases.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  SweepReport report;
  report.config = cfg;
  report.total = static_cast<int>(reports.size());
  for (const CaseReport& r : reports) {
    report.max_abs_err = std::max(report.max_abs_err, r.abs_err);
    report.max_rel_err = std::max(report.max_rel_err, r.rel_err);
    if (!r.passed) report.failures.push_back(r);
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Residual check_recurrence_I(int n, int m, double alpha, double R,
                            const QuadratureSpec& q) {
  require_interior(n, m, alpha, R);
  Residual out;
  auto value = [&](int nn, int mm) -> ComplexScalar {
    if (std::abs(mm) > nn) return 0.0;
    const QuadResult r = integrate_I({nn, mm, alpha, R}, q);
    out.converged = out.converged && r.converged;
    return r.value;
  };
  out.value = recurrence_residual(n, m, alpha, R, value);
  return out;
}

double check_recurrence_F(int n, int m, double alpha, double R) {
  require_interior(n, m, alpha, R);
  auto value = [&](int nn, int mm) -> ComplexScalar {
    if (std::abs(mm) > nn) return 0.0;
    return closed_form_I({nn, mm, alpha, R});
  };
  return recurrence_residual(n, m, alpha, R, value);
}

DerivativeCheck check_derivative(const IntegralParams& p, const QuadratureSpec& q,
                                 double h) {
  p.validate();
  if (!(h > 0) || !(p.R > h)) {
    throw std::domain_error("check_derivative needs R > h > 0");
  }
  const ComplexScalar exact = closed_form_dI_dR(p);
  IntegralParams lo = p;
  IntegralParams hi = p;
  lo.R -= h;
  hi.R += h;
  const ComplexScalar fd = (closed_form_I(hi) - closed_form_I(lo)) / (2 * h);
  const QuadResult quad = integrate_dI_dR(p, q);
  DerivativeCheck out;
  out.fd_err = std::abs(fd - exact);
  out.quad_err = std::abs(quad.value - exact);
  out.scale = 1.0 + std::abs(exact);
  out.converged = quad.converged;
  return out;
}

SpreadCheck check_alpha_independence(double R, const std::vector<double>& alphas,
                                     const QuadratureSpec& q) {
  SpreadCheck out;
  std::vector<ComplexScalar> values;
  values.reserve(alphas.size());
  for (double a : alphas) {
    const QuadResult r = integrate_I({0, 0, a, R}, q);
    out.converged = out.converged && r.converged;
    values.push_back(r.value);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      out.max_spread = std::max(out.max_spread, std::abs(values[i] - values[j]));
    }
  }
  return out;
}

SpecfunGrid SpecfunGrid::standard() {
  SpecfunGrid g;
  for (int k = 0; k <= 40; ++k) {
    g.legendre_x.push_back(k == 0 ? 1.0 : k == 40 ? -1.0
                                            : std::cos(std::numbers::pi * k / 40));
  }
  g.alphas = linspace(0.1, std::numbers::pi - 0.1, 29);
  g.bessel_x = linspace(0.05, 100.0, 80);
  return g;
}

double SpecfunResiduals::max() const {
  return std::max({legendre_sin_form, bessel_three_term, legendre_alpha_form,
                   spherical_three_term});
}

SpecfunResiduals check_specfun_recurrences(int n_max, const SpecfunGrid& grid) {
  if (n_max < 2) throw std::domain_error("check_specfun_recurrences needs n_max >= 2");
  using detail::assoc_legendre_or_zero;
  SpecfunResiduals out;

  for (double x : grid.legendre_x) {
    const double s = std::sqrt((1 - x) * (1 + x));
    for (int n = 0; n <= n_max; ++n) {
      for (int m = -n; m <= n; ++m) {
        const double lhs = (2 * n + 1) * s * assoc_legendre(n, m, x);
        const double raise = normalized_residual(
            lhs, {assoc_legendre_or_zero(n - 1, m + 1, x),
                  -assoc_legendre_or_zero(n + 1, m + 1, x)});
        const double lower = normalized_residual(
            lhs, {double((n - m + 1) * (n - m + 2)) * assoc_legendre_or_zero(n + 1, m - 1, x),
                  -double((n + m) * (n + m - 1)) * assoc_legendre_or_zero(n - 1, m - 1, x)});
        out.legendre_sin_form = std::max({out.legendre_sin_form, raise, lower});
      }
    }
  }

  for (double a : grid.alphas) {
    const double x = std::cos(a);
    const double sa = std::sin(a);
    for (int n = 1; n <= n_max; ++n) {
      for (int m = 1; m <= n; ++m) {
        const double lhs = 2.0 * m / sa * assoc_legendre(n, m, x);
        const double up = normalized_residual(
            lhs, {-double((n - m + 1) * (n - m + 2)) * assoc_legendre_or_zero(n + 1, m - 1, x),
                  -assoc_legendre_or_zero(n + 1, m + 1, x)});
        const double down = normalized_residual(
            lhs, {-double((n + m) * (n + m - 1)) * assoc_legendre_or_zero(n - 1, m - 1, x),
                  -assoc_legendre_or_zero(n - 1, m + 1, x)});
        out.legendre_alpha_form = std::max({out.legendre_alpha_form, up, down});
      }
    }
  }

  for (double x : grid.bessel_x) {
    for (int m = 1; m <= n_max; ++m) {
      const double k = x / (2.0 * m);
      const double r = normalized_residual(
          bessel_j(m, x), {k * bessel_j(m - 1, x), k * bessel_j(m + 1, x)});
      out.bessel_three_term = std::max(out.bessel_three_term, r);
    }
    for (int n = 1; n <= n_max; ++n) {
      const double k = x / (2.0 * n + 1.0);
      const double r = normalized_residual(
          spherical_bessel_j(n, x),
          {k * spherical_bessel_j(n - 1, x), k * spherical_bessel_j(n + 1, x)});
      out.spherical_three_term = std::max(out.spherical_three_term, r);
    }
  }
  return out;
}

double check_mult_theorem(const std::vector<double>& R_grid,
                          const std::vector<double>& alpha_grid, int terms) {
  double worst = 0;
  for (double R : R_grid) {
    const double j0 = R == 0 ? 1.0 : std::sin(R) / R;
    for (double a : alpha_grid) {
      worst = std::max(worst, std::abs(mult_theorem_partial(R, a, terms) - j0));
      worst = std::max(worst, std::abs(i00_series_partial(R, a, terms) - 2.0 * j0));
    }
  }
  return worst;
}

}  // namespace lbk
