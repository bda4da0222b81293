#include "lbk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "real_math.hpp"
#include "specfun_impl.hpp"

namespace lbk {

namespace {

using math::quad;

template <class Real>
struct Cx {
  Real re = 0;
  Real im = 0;

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend Cx operator*(Real k, const Cx& z) { return {k * z.re, k * z.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  double modulus() const {
    const double r = static_cast<double>(re);
    const double i = static_cast<double>(im);
    return std::hypot(r, i);
  }
};

template <class Real>
Cx<Real> polar_unit(Real amplitude, Real phase) {
  return {amplitude * math::cos(phase), amplitude * math::sin(phase)};
}

template <class Real>
Real ipow(Real base, int exponent) {
  Real out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

template <class Real>
struct Rule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

template <class Real>
Rule<Real> compute_rule(int order) {
  Rule<Real> rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const Real eps = math::epsilon<Real>();
  for (int i = 0; i < order; ++i) {
    // Tricomi's initial guess, then Newton on P_order.
    Real x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    Real dp = 1;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1;
      Real p1 = x;
      for (int k = 2; k <= order; ++k) {
        const Real p2 = (static_cast<Real>(2 * k - 1) * x * p1 - static_cast<Real>(k - 1) * p0) /
                        static_cast<Real>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<Real>(order) * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (math::abs(dx) <= 4 * eps) break;
    }
    // Nodes come out descending; store ascending.
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return rule;
}

template <class Real>
const Rule<Real>& cached_rule(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const Rule<Real>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<const Rule<Real>>(compute_rule<Real>(order));
  return *slot;
}

template <class Real, class F>
Cx<Real> fixed_sum(const F& f, Real a, Real b, int panels, int order) {
  const Rule<Real>& rule = cached_rule<Real>(order);
  const Real width = (b - a) / static_cast<Real>(panels);
  const Real half = width / 2;
  Cx<Real> total;
  for (int k = 0; k < panels; ++k) {
    const Real mid = a + (static_cast<Real>(k) + static_cast<Real>(0.5)) * width;
    Cx<Real> panel;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += half * panel;
  }
  return total;
}

struct Attempt {
  QuadResult result;
  bool stalled = false;
};

template <class Real, class F>
Attempt adaptive(const F& f, Real a, Real b, int seed_panels, const QuadratureSpec& q) {
  int panels = std::max(q.base_panels, seed_panels);
  Cx<Real> coarse = fixed_sum(f, a, b, panels, q.nodes_per_panel);
  Attempt out;
  double previous = std::numeric_limits<double>::infinity();
  int stalls = 0;
  for (int r = 0; r < q.max_refinements; ++r) {
    const int fine_panels = 2 * panels;
    const Cx<Real> fine = fixed_sum(f, a, b, fine_panels, q.nodes_per_panel);
    const double err = (fine - coarse).modulus();
    const ComplexScalar value(static_cast<double>(fine.re), static_cast<double>(fine.im));
    out.result = {value, err, fine_panels, false, false};
    if (err <= std::max(q.abs_tol, q.rel_tol * std::abs(value))) {
      out.result.converged = true;
      return out;
    }
    stalls = err > 0.5 * previous ? stalls + 1 : 0;
    if (stalls >= 2) {
      out.stalled = true;
      return out;
    }
    previous = err;
    coarse = fine;
    panels = fine_panels;
  }
  return out;
}

// `f` is generic in the working precision: f(Real t) -> Cx<Real>.
template <class F>
QuadResult integrate_theta(const F& f, int seed_panels, const QuadratureSpec& q) {
  q.validate();
  const Attempt first = adaptive<long double>(f, 0.0L, math::pi<long double>(),
                                              seed_panels, q);
  if (first.result.converged || !first.stalled) return first.result;
  Attempt second = adaptive<quad>(f, quad(0), math::pi<quad>(), seed_panels, q);
  second.result.extended_precision = true;
  if (second.result.converged || second.result.est_error < first.result.est_error) {
    return second.result;
  }
  return first.result;
}

void require_nonnegative_finite(double x, const char* what) {
  if (!std::isfinite(x) || x < 0) {
    throw std::domain_error(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (base_panels < 1 || nodes_per_panel < 1 || max_refinements < 1) {
    throw std::invalid_argument(
        "quadrature: base_panels, nodes_per_panel and max_refinements must be positive");
  }
  if (!(abs_tol > 0 && abs_tol < 1) || !(rel_tol > 0 && rel_tol < 1)) {
    throw std::invalid_argument("quadrature: tolerances must lie in (0, 1)");
  }
}

const GaussRule& gauss_legendre_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussRule>> cache;
  const Rule<long double>& rule = cached_rule<long double>(order);
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<const GaussRule>(GaussRule{rule.nodes, rule.weights});
  return *slot;
}

std::complex<long double> integrate_fixed(const Integrand& f, double a, double b,
                                          int panels, int nodes_per_panel) {
  auto g = [&](long double t) {
    const auto v = f(t);
    return Cx<long double>{v.real(), v.imag()};
  };
  const auto r = fixed_sum<long double>(g, a, b, panels, nodes_per_panel);
  return {r.re, r.im};
}

QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              int seed_panels, const QuadratureSpec& q) {
  q.validate();
  auto g = [&](long double t) {
    const auto v = f(t);
    return Cx<long double>{v.real(), v.imag()};
  };
  return adaptive<long double>(g, a, b, seed_panels, q).result;
}

int oscillation_panels(double R, int n) {
  return std::max(8, static_cast<int>(std::ceil(R / std::numbers::pi)) + n);
}

QuadResult integrate_I(const IntegralParams& p, const QuadratureSpec& q) {
  p.validate();
  const int n = p.n;
  const int m = p.m;
  auto f = [=](auto t) {
    using Real = decltype(t);
    const Real alpha = p.alpha;
    const Real R = p.R;
    const Real c = math::cos(t);
    const Real s = math::sin(t);
    const Real amplitude = s * detail::legendre(n, m, c) *
                           detail::bessel(m, R * math::sin(alpha) * s);
    return polar_unit(amplitude, R * math::cos(alpha) * c);
  };
  return integrate_theta(f, oscillation_panels(p.R, p.n), q);
}

QuadResult integrate_dI_dR(const IntegralParams& p, const QuadratureSpec& q) {
  p.validate();
  const int n = p.n;
  const int m = p.m;
  auto f = [=](auto t) {
    using Real = decltype(t);
    const Real alpha = p.alpha;
    const Real R = p.R;
    const Real ca = math::cos(alpha);
    const Real sa = math::sin(alpha);
    const Real c = math::cos(t);
    const Real s = math::sin(t);
    const Real z = R * sa * s;
    const Real jm = detail::bessel(m, z);
    const Real djm = (detail::bessel(m - 1, z) - detail::bessel(m + 1, z)) / 2;
    // exp(i phase) * (sa s J_m' + i ca c J_m)
    const Cx<Real> e = polar_unit(s * detail::legendre(n, m, c), R * ca * c);
    const Real br = sa * s * djm;
    const Real bi = ca * c * jm;
    return Cx<Real>{e.re * br - e.im * bi, e.re * bi + e.im * br};
  };
  return integrate_theta(f, oscillation_panels(p.R, p.n), q);
}

QuadResult integrate_lock(int n, int m, double R, Sign sign, const QuadratureSpec& q) {
  const int k = std::abs(m);
  if (n < 0 || k > n) {
    throw std::domain_error("integrate_lock: need n >= 0 and |m| <= n");
  }
  require_nonnegative_finite(R, "integrate_lock: R");
  const double signed_R = static_cast<int>(sign) * R;
  auto f = [=](auto t) {
    using Real = decltype(t);
    const Real c = math::cos(t);
    const Real s = math::sin(t);
    return polar_unit(ipow(s, k + 1) * detail::legendre(n, k, c),
                      static_cast<Real>(signed_R) * c);
  };
  return integrate_theta(f, oscillation_panels(R, n), q);
}

QuadResult integrate_poisson_exp(int s, double x, const QuadratureSpec& q) {
  if (s < 0) throw std::domain_error("integrate_poisson_exp: s must be >= 0");
  require_nonnegative_finite(x, "integrate_poisson_exp: x");
  auto f = [=](auto t) {
    using Real = decltype(t);
    return polar_unit(ipow(math::sin(t), 2 * s + 1), static_cast<Real>(x) * math::cos(t));
  };
  return integrate_theta(f, oscillation_panels(x, s), q);
}

QuadResult integrate_parity_null(int s, double x, const QuadratureSpec& q) {
  if (s < 0) throw std::domain_error("integrate_parity_null: s must be >= 0");
  require_nonnegative_finite(x, "integrate_parity_null: x");
  auto f = [=](auto t) {
    using Real = decltype(t);
    return Cx<Real>{ipow(math::sin(t), 2 * s + 1) *
                        math::sin(static_cast<Real>(x) * math::cos(t)),
                    Real(0)};
  };
  return integrate_theta(f, oscillation_panels(x, s), q);
}

}  // namespace lbk
