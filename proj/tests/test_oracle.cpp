#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lbk/kernel.hpp"
#include "lbk/oracle.hpp"
#include "lbk/specfun.hpp"

using namespace lbk;
using std::numbers::pi;

namespace {

QuadratureSpec tight() {
  QuadratureSpec q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-13;
  return q;
}

double scaled_gap(ComplexScalar a, ComplexScalar b) {
  return std::abs(a - b) / (1 + std::abs(b));
}

}  // namespace

TEST_CASE("Gauss-Legendre rule properties") {
  const GaussRule& r = gauss_legendre_rule(32);
  REQUIRE(r.nodes.size() == 32);
  long double wsum = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    wsum += r.weights[i];
    CHECK(r.weights[i] > 0);
    if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    CHECK(std::abs(static_cast<double>(r.nodes[i] + r.nodes[31 - i])) <= 1e-18);
  }
  CHECK(std::abs(static_cast<double>(wsum - 2)) <= 1e-17);
  CHECK(&gauss_legendre_rule(32) == &r);
  CHECK_THROWS_AS(gauss_legendre_rule(0), std::invalid_argument);
}

TEST_CASE("a single 32-node panel integrates polynomials of degree <= 63 exactly") {
  for (int k = 0; k <= 63; ++k) {
    const Integrand f = [k](long double t) {
      return std::complex<long double>(std::pow(t, k), 0);
    };
    const auto v = integrate_fixed(f, 0.0, 1.0, 1, 32);
    INFO("k=" << k);
    CHECK(std::abs(static_cast<double>(v.real() * (k + 1) - 1)) <= 1e-16);
  }
}

TEST_CASE("integrate_I examples") {
  const auto base = integrate_I({0, 0, 1.0, pi / 2}, tight());
  REQUIRE(base.converged);
  CHECK(std::abs(base.value - ComplexScalar(4 / pi, 0)) <= 1e-12);

  const auto zero = integrate_I({3, 1, 0.4, 0.0}, tight());
  REQUIRE(zero.converged);
  CHECK(std::abs(zero.value) <= 1e-14);

  const auto v = integrate_I({2, 1, pi / 3, 2.0}, tight());
  REQUIRE(v.converged);
  CHECK(std::abs(v.value.real()) <= 1e-13);
  CHECK(v.value.imag() == doctest::Approx(-0.5155828956372273).epsilon(1e-12));
  CHECK(v.est_error <= 1e-13);
  CHECK(v.panels_used >= oscillation_panels(2.0, 2));
}

TEST_CASE("integrate_dI_dR examples") {
  const auto d = integrate_dI_dR({0, 0, 0.3, pi}, tight());
  REQUIRE(d.converged);
  CHECK(std::abs(d.value - ComplexScalar(-2 / pi, 0)) <= 1e-12);
  const auto d0 = integrate_dI_dR({2, 2, pi / 2, 0.0}, tight());
  REQUIRE(d0.converged);
  CHECK(std::abs(d0.value) <= 1e-14);
  const IntegralParams p{6, -3, 2.2, 17.0};
  const auto q = integrate_dI_dR(p, tight());
  REQUIRE(q.converged);
  CHECK(scaled_gap(q.value, closed_form_dI_dR(p)) <= 1e-10);
}

TEST_CASE("integrate_lock and the poisson integrals") {
  const auto l = integrate_lock(1, 1, 0.0, Sign::Plus, tight());
  REQUIRE(l.converged);
  CHECK(std::abs(l.value - ComplexScalar(-4.0 / 3.0, 0)) <= 1e-13);
  const auto p = integrate_poisson_exp(1, 2.0, tight());
  REQUIRE(p.converged);
  CHECK(std::abs(p.value.real() - 0.8707955499599832) <= 1e-13);
  const auto n0 = integrate_parity_null(3, 20.0, tight());
  REQUIRE(n0.converged);
  CHECK(std::abs(n0.value) <= 1e-12);
  CHECK_THROWS_AS(integrate_lock(2, 3, 1.0, Sign::Plus), std::domain_error);
  CHECK_THROWS_AS(integrate_poisson_exp(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(integrate_parity_null(1, -1.0), std::domain_error);
}

TEST_CASE("quadrature is invalid-argument checked") {
  QuadratureSpec q;
  q.nodes_per_panel = 0;
  CHECK_THROWS_AS(integrate_I({0, 0, 1.0, 1.0}, q), std::invalid_argument);
  q = {};
  q.rel_tol = 0;
  CHECK_THROWS_AS(integrate_I({0, 0, 1.0, 1.0}, q), std::invalid_argument);
  q = {};
  q.abs_tol = 2;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  CHECK_THROWS_AS(integrate_I({0, 1, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("forced non-convergence is reported, not thrown") {
  QuadratureSpec q;
  q.abs_tol = 1e-40;
  q.rel_tol = 1e-40;
  q.max_refinements = 1;
  const auto r = integrate_I({5, 2, 0.8, 30.0}, q);
  CHECK_FALSE(r.converged);
  CHECK(std::isfinite(r.value.real()));
  CHECK(r.est_error >= 0);
}

TEST_CASE("refining the starting grid does not grow the error estimate") {
  for (const IntegralParams& p : {IntegralParams{4, 2, 0.9, 12.0},
                                  IntegralParams{10, -7, 2.0, 35.0},
                                  IntegralParams{20, 20, 1.5, 50.0}}) {
    QuadratureSpec coarse;
    coarse.abs_tol = 1e-40;
    coarse.rel_tol = 1e-40;
    coarse.max_refinements = 1;
    coarse.base_panels = oscillation_panels(p.R, p.n);
    QuadratureSpec fine = coarse;
    fine.base_panels *= 2;
    const auto a = integrate_I(p, coarse);
    const auto b = integrate_I(p, fine);
    INFO("n=" << p.n << " m=" << p.m << " R=" << p.R);
    CHECK(b.est_error <= a.est_error + 1e-16 * (1 + std::abs(a.value)));
  }
}

TEST_CASE("alpha = pi/2 keeps the value on one axis") {
  for (int n = 0; n <= 8; ++n) {
    for (int m = -n; m <= n; ++m) {
      const IntegralParams p{n, m, pi / 2, 6.5};
      const auto r = integrate_I(p, tight());
      REQUIRE(r.converged);
      const auto exact = closed_form_I(p);
      CHECK(scaled_gap(r.value, exact) <= 1e-11);
      const double off = (n - m) % 2 == 0 ? r.value.imag() : r.value.real();
      CHECK(std::abs(off) <= 1e-12 * (1 + std::abs(exact)));
    }
  }
}

TEST_CASE("quadrature stays converged for n <= 30 and R <= 100") {
  for (int n : {0, 7, 19, 30}) {
    for (int m : {-n, -n / 2, 0, n / 3, n}) {
      for (double a : {0.05, 0.8, pi / 2, 2.6, pi - 0.05}) {
        for (double R : {0.01, 10.0, 57.0, 100.0}) {
          const IntegralParams p{n, m, a, R};
          QuadratureSpec q;
          q.abs_tol = 1e-10;
          q.rel_tol = 1e-10;
          const auto r = integrate_I(p, q);
          INFO("n=" << n << " m=" << m << " a=" << a << " R=" << R);
          CHECK(r.converged);
          CHECK(scaled_gap(r.value, closed_form_I(p)) <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("the long double floor escalates to __float128") {
  // Integrand peaks near 1e11 times the value of the integral.
  const IntegralParams p{18, 18, 0.14638226544319210, 49.74022809322509};
  QuadratureSpec q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-10;
  const auto r = integrate_I(p, q);
  CHECK(r.converged);
  CHECK(r.extended_precision);
  CHECK(scaled_gap(r.value, closed_form_I(p)) <= 1e-8);
}

TEST_CASE("quadrature is deterministic") {
  const IntegralParams p{9, 4, 1.3, 27.0};
  const auto a = integrate_I(p);
  const auto b = integrate_I(p);
  CHECK(a.value == b.value);
  CHECK(a.est_error == b.est_error);
  CHECK(a.panels_used == b.panels_used);
}
