#include "lbk/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lbk/kernel.hpp"
#include "lbk/oracle.hpp"
#include "lbk/report.hpp"
#include "lbk/verify.hpp"

namespace lbk {

namespace {

constexpr int kJsonIndent = 2;

// Verification runs the quadrature this much tighter than the pass/fail
// tolerance, so a passing case is never decided by quadrature truncation.
constexpr double kSweepQuadratureMargin = 1e-2;

struct IntegralFlags {
  IntegralParams p;
  std::string format = "json";
};

void add_integral_flags(CLI::App* cmd, IntegralFlags& f) {
  cmd->add_option("--n", f.p.n, "Degree n >= 0")->required();
  cmd->add_option("--m", f.p.m, "Order m, |m| <= n")->required();
  cmd->add_option("--alpha", f.p.alpha, "Angle alpha in radians, [0, pi]")->required();
  cmd->add_option("--R", f.p.R, "Dimensionless radius R >= 0")->required();
}

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void add_quadrature_flags(CLI::App* cmd, QuadratureSpec& q) {
  cmd->add_option("--abs-tol", q.abs_tol, "Quadrature absolute tolerance")
      ->capture_default_str();
  cmd->add_option("--rel-tol", q.rel_tol, "Quadrature relative tolerance")
      ->capture_default_str();
  cmd->add_option("--max-refinements", q.max_refinements, "Maximum panel doublings")
      ->capture_default_str();
  cmd->add_option("--nodes-per-panel", q.nodes_per_panel, "Gauss-Legendre order per panel")
      ->capture_default_str();
  cmd->add_option("--base-panels", q.base_panels, "Minimum starting panel count")
      ->capture_default_str();
}

void write_json(std::ostream& out, const nlohmann::ordered_json& j) {
  out << j.dump(kJsonIndent) << '\n';
}

void write_records(std::ostream& out, const std::vector<OutputRecord>& records,
                   const std::string& format, bool as_array) {
  if (format == "csv") {
    out << kRecordCsvHeader << '\n';
    for (const auto& r : records) out << to_csv_row(r) << '\n';
    return;
  }
  if (!as_array && records.size() == 1) {
    write_json(out, to_json(records.front()));
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  write_json(out, arr);
}

OutputRecord make_record(const IntegralParams& p, ComplexScalar v, Method method) {
  return {p.n, p.m, p.alpha, p.R, v.real(), v.imag(), method, std::nullopt};
}

int workers_from_env() {
  const char* raw = std::getenv(kWorkersEnv);
  if (raw == nullptr || *raw == '\0') {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || value < 1) {
    throw std::invalid_argument(std::string(kWorkersEnv) +
                                " must be a positive integer, got '" + raw + "'");
  }
  return value;
}

int cmd_eval(const IntegralFlags& f, std::ostream& out) {
  f.p.validate();
  write_records(out, {make_record(f.p, closed_form_I(f.p), Method::Closed)}, f.format,
                false);
  return kExitOk;
}

int cmd_quad(const IntegralFlags& f, const QuadratureSpec& q, std::ostream& out,
             std::ostream& err) {
  f.p.validate();
  q.validate();
  const QuadResult r = integrate_I(f.p, q);
  const OutputRecord rec = make_record(f.p, r.value, Method::Quad);
  if (f.format == "csv") {
    write_records(out, {rec}, f.format, false);
  } else {
    auto j = to_json(rec);
    j["est_error"] = r.est_error;
    j["panels_used"] = r.panels_used;
    j["converged"] = r.converged;
    write_json(out, j);
  }
  if (!r.converged) {
    err << "quad: not converged after " << q.max_refinements
        << " refinements (est_error=" << format_real(r.est_error)
        << ", panels=" << r.panels_used << ")\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_verify(const SweepConfig& cfg, const std::string& format, std::ostream& out,
               std::ostream& err) {
  cfg.validate();
  const int workers = workers_from_env();
  QuadratureSpec q;
  q.abs_tol = cfg.abs_tol * kSweepQuadratureMargin;
  q.rel_tol = cfg.rel_tol * kSweepQuadratureMargin;
  const SweepReport report = sweep_random(cfg, q, workers);
  if (format == "csv") {
    out << kSweepCsvHeader << '\n' << to_csv_row(report) << '\n';
  } else {
    write_json(out, to_json(report));
  }
  err << "verify: " << report.total << " cases, " << report.failures.size()
      << " failures, " << format_real(report.wall_time_s) << " s on " << workers
      << " worker(s)\n";
  return report.failures.empty() ? kExitOk : kExitVerifyFailed;
}

int cmd_bench(int n_max, double R_max, int reps, const std::string& format,
              std::ostream& out, std::ostream& err) {
  const auto rows = run_bench(n_max, R_max, reps);
  if (format == "csv") {
    out << kBenchCsvHeader << '\n';
    for (const auto& r : rows) out << to_csv_row(r) << '\n';
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    write_json(out, arr);
  }
  if (reps < 5) {
    err << "bench: only " << reps
        << " repetition(s); timings carry high variance (see quad_cv)\n";
  }
  return kExitOk;
}

struct TableFlags {
  int n_max = 0;
  bool all_m = false;
  std::vector<int> m_values;
  double alpha = 0.0;
  std::vector<double> radii;
  std::string method = "closed";
  std::string format = "json";
};

int cmd_table(const TableFlags& f, const QuadratureSpec& q, std::ostream& out,
              std::ostream& err) {
  if (f.n_max < 0) throw std::domain_error("n-max must be >= 0");
  if (!f.all_m && f.m_values.empty()) {
    throw std::domain_error("give --all-m or at least one --m value");
  }
  const bool want_closed = f.method != "quad";
  const bool want_quad = f.method != "closed";
  if (want_quad) q.validate();

  std::vector<OutputRecord> records;
  bool all_converged = true;
  for (double R : f.radii) {
    for (int n = 0; n <= f.n_max; ++n) {
      std::vector<int> orders;
      if (f.all_m) {
        for (int m = -n; m <= n; ++m) orders.push_back(m);
      } else {
        for (int m : f.m_values) {
          if (std::abs(m) <= n) orders.push_back(m);
        }
      }
      for (int m : orders) {
        const IntegralParams p{n, m, f.alpha, R};
        p.validate();
        ComplexScalar closed;
        QuadResult quad;
        if (want_closed) closed = closed_form_I(p);
        if (want_quad) {
          quad = integrate_I(p, q);
          all_converged = all_converged && quad.converged;
        }
        std::optional<double> diff;
        if (want_closed && want_quad) diff = std::abs(closed - quad.value);
        if (want_closed) {
          records.push_back(make_record(p, closed, Method::Closed));
          records.back().abs_err = diff;
        }
        if (want_quad) {
          records.push_back(make_record(p, quad.value, Method::Quad));
          records.back().abs_err = diff;
        }
      }
    }
  }
  write_records(out, records, f.format, true);
  if (!all_converged) {
    err << "table: at least one quadrature did not converge\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form and quadrature evaluation of Bessel x associated Legendre "
               "integrals. Angles are in radians."};
  app.require_subcommand(1);

  IntegralFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "Closed-form value 2 i^(n-m) P_n^m(cos a) j_n(R)");
  add_integral_flags(eval, eval_flags);
  add_format_flag(eval, eval_flags.format);

  IntegralFlags quad_flags;
  QuadratureSpec quad_spec;
  auto* quad = app.add_subcommand("quad", "Value of the defining integral by quadrature");
  add_integral_flags(quad, quad_flags);
  add_format_flag(quad, quad_flags.format);
  add_quadrature_flags(quad, quad_spec);

  SweepConfig sweep;
  std::string verify_format = "json";
  auto* verify = app.add_subcommand("verify", "Random closed-form vs quadrature sweep");
  verify->add_option("--seed", sweep.seed, "Generator seed")->capture_default_str();
  verify->add_option("--cases", sweep.cases, "Number of random cases")->capture_default_str();
  verify->add_option("--n-max", sweep.n_max, "Largest degree")->capture_default_str();
  verify->add_option("--R-max", sweep.R_max, "Largest radius")->capture_default_str();
  verify->add_option("--alpha-margin", sweep.alpha_margin,
                     "alpha is drawn from [margin, pi - margin]")
      ->capture_default_str();
  verify->add_option("--abs-tol", sweep.abs_tol, "Pass if abs_err <= abs-tol")
      ->capture_default_str();
  verify->add_option("--rel-tol", sweep.rel_tol, "Pass if abs_err/(1+|closed|) <= rel-tol")
      ->capture_default_str();
  add_format_flag(verify, verify_format);

  int bench_n_max = 20;
  double bench_R_max = 50.0;
  int bench_reps = 10;
  std::string bench_format = "json";
  auto* bench = app.add_subcommand("bench", "Time closed form against quadrature");
  bench->add_option("--n-max", bench_n_max, "Largest degree")->capture_default_str();
  bench->add_option("--R-max", bench_R_max, "Largest radius")->capture_default_str();
  bench->add_option("--reps", bench_reps, "Repetitions per row")->capture_default_str();
  add_format_flag(bench, bench_format);

  TableFlags table_flags;
  QuadratureSpec table_spec;
  auto* table = app.add_subcommand("table", "Batch evaluation over n, m and R");
  table->add_option("--n-max", table_flags.n_max, "Largest degree")->required();
  table->add_flag("--all-m", table_flags.all_m, "Every m with |m| <= n");
  table->add_option("--m", table_flags.m_values, "Orders to emit (comma separated)")
      ->delimiter(',');
  table->add_option("--alpha", table_flags.alpha, "Angle in radians")->required();
  table->add_option("--R", table_flags.radii, "Radii (comma separated)")
      ->delimiter(',')
      ->required();
  table->add_option("--method", table_flags.method, "closed, quad or both")
      ->check(CLI::IsMember({"closed", "quad", "both"}))
      ->capture_default_str();
  add_format_flag(table, table_flags.format);
  table->add_option("--abs-tol", table_spec.abs_tol, "Quadrature absolute tolerance")
      ->capture_default_str();
  table->add_option("--rel-tol", table_spec.rel_tol, "Quadrature relative tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_flags, out);
    if (quad->parsed()) return cmd_quad(quad_flags, quad_spec, out, err);
    if (verify->parsed()) return cmd_verify(sweep, verify_format, out, err);
    if (bench->parsed()) {
      return cmd_bench(bench_n_max, bench_R_max, bench_reps, bench_format, out, err);
    }
    if (table->parsed()) return cmd_table(table_flags, table_spec, out, err);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace lbk
