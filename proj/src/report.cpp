#include "lbk/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lbk {

std::string_view method_name(Method m) {
  return m == Method::Closed ? "closed" : "quad";
}

namespace {

// Exact products with a zero factor can come out as -0.
double unsigned_zero(double x) { return x == 0 ? 0.0 : x; }

}  // namespace

std::string format_real(double x) {
  x = unsigned_zero(x);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json to_json(const OutputRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["alpha"] = r.alpha;
  j["R"] = r.R;
  j["re"] = unsigned_zero(r.re);
  j["im"] = unsigned_zero(r.im);
  j["method"] = method_name(r.method);
  if (r.abs_err) j["abs_err"] = *r.abs_err;
  return j;
}

std::string to_csv_row(const OutputRecord& r) {
  std::string row = std::to_string(r.n) + ',' + std::to_string(r.m) + ',' +
                    format_real(r.alpha) + ',' + format_real(r.R) + ',' +
                    format_real(r.re) + ',' + format_real(r.im) + ',' +
                    std::string(method_name(r.method)) + ',';
  if (r.abs_err) row += format_real(*r.abs_err);
  return row;
}

nlohmann::ordered_json to_json(const SweepReport& r) {
  nlohmann::ordered_json cfg;
  cfg["seed"] = r.config.seed;
  cfg["cases"] = r.config.cases;
  cfg["n_max"] = r.config.n_max;
  cfg["R_max"] = r.config.R_max;
  cfg["alpha_margin"] = r.config.alpha_margin;
  cfg["abs_tol"] = r.config.abs_tol;
  cfg["rel_tol"] = r.config.rel_tol;

  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const CaseReport& c : r.failures) {
    nlohmann::ordered_json f;
    f["n"] = c.params.n;
    f["m"] = c.params.m;
    f["alpha"] = c.params.alpha;
    f["R"] = c.params.R;
    f["closed_re"] = c.closed.real();
    f["closed_im"] = c.closed.imag();
    f["oracle_re"] = c.oracle.real();
    f["oracle_im"] = c.oracle.imag();
    f["abs_err"] = c.abs_err;
    f["rel_err"] = c.rel_err;
    f["oracle_converged"] = c.oracle_converged;
    failures.push_back(std::move(f));
  }

  nlohmann::ordered_json j;
  j["config"] = std::move(cfg);
  j["total"] = r.total;
  j["failure_count"] = r.failures.size();
  j["max_abs_err"] = r.max_abs_err;
  j["max_rel_err"] = r.max_rel_err;
  j["failures"] = std::move(failures);
  return j;
}

std::string to_csv_row(const SweepReport& r) {
  const SweepConfig& c = r.config;
  return std::to_string(c.seed) + ',' + std::to_string(c.cases) + ',' +
         std::to_string(c.n_max) + ',' + format_real(c.R_max) + ',' +
         format_real(c.alpha_margin) + ',' + format_real(c.abs_tol) + ',' +
         format_real(c.rel_tol) + ',' + std::to_string(r.total) + ',' +
         std::to_string(r.failures.size()) + ',' + format_real(r.max_abs_err) + ',' +
         format_real(r.max_rel_err);
}

nlohmann::ordered_json to_json(const BenchRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["alpha"] = r.alpha;
  j["R"] = r.R;
  j["reps"] = r.reps;
  j["closed_mean_us"] = r.closed_mean_us;
  j["quad_mean_us"] = r.quad_mean_us;
  j["speedup"] = r.speedup;
  if (r.quad_cv) {
    j["quad_cv"] = *r.quad_cv;
  } else {
    j["quad_cv"] = nullptr;
  }
  j["converged"] = r.converged;
  j["abs_err"] = r.abs_err;
  return j;
}

std::string to_csv_row(const BenchRow& r) {
  return std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + format_real(r.alpha) +
         ',' + format_real(r.R) + ',' + std::to_string(r.reps) + ',' +
         format_real(r.closed_mean_us) + ',' + format_real(r.quad_mean_us) + ',' +
         format_real(r.speedup) + ',' + (r.quad_cv ? format_real(*r.quad_cv) : "") + ',' +
         (r.converged ? "true" : "false") + ',' + format_real(r.abs_err);
}

std::vector<BenchRow> run_bench(int n_max, double R_max, int reps,
                                const QuadratureSpec& q) {
  if (n_max < 0 || !(R_max > 0) || !std::isfinite(R_max) || reps < 1) {
    throw std::invalid_argument("bench: need n_max >= 0, R_max > 0, reps >= 1");
  }
  using clock = std::chrono::steady_clock;
  constexpr int kClosedBatch = 1000;
  // Keeps the timed closed-form loop from being optimised away.
  volatile double guard = 0;
  const int radii = static_cast<int>(std::ceil(R_max / 10.0));

  std::vector<BenchRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    for (int j = 1; j <= radii; ++j) {
      const IntegralParams p{n, n / 2, 1.0, R_max * j / radii};
      BenchRow row;
      row.n = p.n;
      row.m = p.m;
      row.alpha = p.alpha;
      row.R = p.R;
      row.reps = reps;

      double closed_total = 0;
      double quad_total = 0;
      double quad_sq = 0;
      QuadResult quad;
      for (int rep = 0; rep < reps; ++rep) {
        auto t0 = clock::now();
        ComplexScalar sink = 0;
        for (int k = 0; k < kClosedBatch; ++k) sink += closed_form_I(p);
        auto t1 = clock::now();
        quad = integrate_I(p, q);
        auto t2 = clock::now();
        guard = guard + sink.real();
        const double c_us =
            std::chrono::duration<double, std::micro>(t1 - t0).count() / kClosedBatch;
        const double q_us = std::chrono::duration<double, std::micro>(t2 - t1).count();
        closed_total += c_us;
        quad_total += q_us;
        quad_sq += q_us * q_us;
      }
      row.closed_mean_us = closed_total / reps;
      row.quad_mean_us = quad_total / reps;
      row.speedup = row.quad_mean_us / row.closed_mean_us;
      if (reps > 1) {
        const double var =
            std::max(0.0, quad_sq / reps - row.quad_mean_us * row.quad_mean_us);
        row.quad_cv = std::sqrt(var) / row.quad_mean_us;
      }
      row.converged = quad.converged;
      row.abs_err = std::abs(quad.value - closed_form_I(p));
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace lbk
