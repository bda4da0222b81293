#pragma once

/// \file report.hpp
/// \brief Machine-readable rendering of evaluation records, sweep reports
/// and benchmark tables.
///
/// Floats are written in the shortest form that parses back to the same
/// double (std::to_chars for CSV, nlohmann::json's equivalent for JSON).
/// JSON objects use a fixed field order. CSV lines end in a single '\n'.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lbk/verify.hpp"

namespace lbk {

enum class Method { Closed, Quad };

std::string_view method_name(Method m);

struct OutputRecord {
  int n = 0;
  int m = 0;
  double alpha = 0.0;
  double R = 0.0;
  double re = 0.0;
  double im = 0.0;
  Method method = Method::Closed;
  /// Set only when both methods ran for the same parameters.
  std::optional<double> abs_err;
};

inline constexpr std::string_view kRecordCsvHeader = "n,m,alpha,R,re,im,method,abs_err";

/// Shortest round-trip decimal form; -0 prints as 0.
std::string format_real(double x);

nlohmann::ordered_json to_json(const OutputRecord& r);
std::string to_csv_row(const OutputRecord& r);

/// Sweep report without its wall time, so equal seeds give equal text.
nlohmann::ordered_json to_json(const SweepReport& r);
inline constexpr std::string_view kSweepCsvHeader =
    "seed,cases,n_max,R_max,alpha_margin,abs_tol,rel_tol,total,failures,max_abs_err,"
    "max_rel_err";
std::string to_csv_row(const SweepReport& r);

/// One timing row of the closed-form versus quadrature comparison.
struct BenchRow {
  int n = 0;
  int m = 0;
  double alpha = 0.0;
  double R = 0.0;
  int reps = 0;
  double closed_mean_us = 0.0;
  double quad_mean_us = 0.0;
  double speedup = 0.0;
  /// Coefficient of variation of the per-repetition quadrature time; unset
  /// for a single repetition, where it cannot be estimated.
  std::optional<double> quad_cv;
  bool converged = false;
  double abs_err = 0.0;
};

inline constexpr std::string_view kBenchCsvHeader =
    "n,m,alpha,R,reps,closed_mean_us,quad_mean_us,speedup,quad_cv,converged,abs_err";

nlohmann::ordered_json to_json(const BenchRow& r);
std::string to_csv_row(const BenchRow& r);

/// Times closed_form_I against integrate_I for n = 0..n_max and
/// R = R_max * j / K, j = 1..K with K = ceil(R_max / 10), at m = n / 2 and
/// alpha = 1. Each repetition evaluates the quadrature once and the closed
/// form 1000 times.
std::vector<BenchRow> run_bench(int n_max, double R_max, int reps,
                                const QuadratureSpec& q = {});

}  // namespace lbk
