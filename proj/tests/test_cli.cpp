#include <doctest.h>

#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbk/cli.hpp"
#include "lbk/report.hpp"

using namespace lbk;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lbk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Keeps LBK_WORKERS at a fixed value for the lifetime of the guard.
struct WorkersEnv {
  explicit WorkersEnv(const char* value) { ::setenv(kWorkersEnv, value, 1); }
  ~WorkersEnv() { ::unsetenv(kWorkersEnv); }
};

}  // namespace

TEST_CASE("eval prints one JSON record") {
  const Run r = run({"eval", "--n", "0", "--m", "0", "--alpha", "1.0", "--R", "1.5707963"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["n"] == 0);
  CHECK(j["method"] == "closed");
  CHECK(j["re"].get<double>() == doctest::Approx(4 / std::numbers::pi).epsilon(1e-7));
  CHECK(j["im"].get<double>() == 0.0);
  CHECK_FALSE(j.contains("abs_err"));
}

TEST_CASE("eval JSON round-trips through a parser unchanged") {
  const Run r = run({"eval", "--n", "2", "--m", "1", "--alpha", "1.0471975511965976",
                     "--R", "2"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.back() == '\n');
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j.dump(2) + "\n" == r.out);
  CHECK(j["im"].get<double>() == doctest::Approx(-0.5155828956372273).epsilon(1e-14));
}

TEST_CASE("eval CSV header is exact") {
  const Run r = run({"eval", "--n", "3", "--m", "-2", "--alpha", "0.5", "--R", "0",
                     "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "n,m,alpha,R,re,im,method,abs_err");
  CHECK(ls[1] == "3,-2,0.5,0,0,0,closed,");
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("invalid input exits with 2") {
  CHECK(run({"eval", "--n", "1", "--m", "2", "--alpha", "1", "--R", "1"}).code ==
        kExitInvalidInput);
  CHECK(run({"eval", "--n", "1", "--m", "0", "--alpha", "4", "--R", "1"}).code ==
        kExitInvalidInput);
  CHECK(run({"eval", "--n", "1", "--m", "0", "--alpha", "1", "--R", "-1"}).code ==
        kExitInvalidInput);
  CHECK(run({"eval", "--n", "1", "--m", "0", "--alpha", "1"}).code == kExitInvalidInput);
  CHECK(run({"eval", "--n", "x", "--m", "0", "--alpha", "1", "--R", "1"}).code ==
        kExitInvalidInput);
  CHECK(run({"eval", "--n", "1", "--m", "0", "--alpha", "1", "--R", "1", "--format",
             "xml"}).code == kExitInvalidInput);
  CHECK(run({"frobnicate"}).code == kExitInvalidInput);
  CHECK(run({}).code == kExitInvalidInput);
  const Run bad = run({"eval", "--n", "1", "--m", "2", "--alpha", "1", "--R", "1"});
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.out.empty());
}

TEST_CASE("help exits with 0") {
  const Run r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("eval") != std::string::npos);
}

TEST_CASE("quad reports convergence details") {
  const Run r = run({"quad", "--n", "2", "--m", "1", "--alpha", "1.0471975511965976",
                     "--R", "2"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["method"] == "quad");
  CHECK(j["converged"] == true);
  CHECK(j["im"].get<double>() == doctest::Approx(-0.5155828956).epsilon(1e-9));
  CHECK(j["panels_used"].get<int>() >= 8);
  CHECK(j["est_error"].get<double>() >= 0);
}

TEST_CASE("quad exits with 3 when it cannot converge") {
  const Run r = run({"quad", "--n", "5", "--m", "2", "--alpha", "0.8", "--R", "30",
                     "--abs-tol", "1e-30", "--rel-tol", "1e-40", "--max-refinements",
                     "1"});
  CHECK(r.code == kExitNotConverged);
  CHECK(json::parse(r.out)["converged"] == false);
  CHECK(r.err.find("not converged") != std::string::npos);
}

TEST_CASE("quad rejects bad quadrature settings") {
  CHECK(run({"quad", "--n", "1", "--m", "0", "--alpha", "1", "--R", "1",
             "--nodes-per-panel", "0"}).code == kExitInvalidInput);
  CHECK(run({"quad", "--n", "1", "--m", "0", "--alpha", "1", "--R", "1", "--rel-tol",
             "0"}).code == kExitInvalidInput);
}

TEST_CASE("verify output is deterministic and independent of workers") {
  const std::vector<std::string> args{"verify", "--seed", "5", "--cases", "40"};
  Run a, b;
  {
    WorkersEnv env("1");
    a = run(args);
  }
  {
    WorkersEnv env("3");
    b = run(args);
  }
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["total"] == 40);
  CHECK(j["failure_count"] == 0);
  CHECK(j["config"]["seed"] == 5);
  CHECK(j["failures"].empty());
  CHECK(a.err.find("40 cases") != std::string::npos);
}

TEST_CASE("verify CSV") {
  WorkersEnv env("2");
  const Run r = run({"verify", "--cases", "5", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == std::string(kSweepCsvHeader));
  CHECK(ls[1].rfind("42,5,20,50,", 0) == 0);
}

TEST_CASE("verify input and failure exit codes") {
  CHECK(run({"verify", "--cases", "0"}).code == kExitInvalidInput);
  CHECK(run({"verify", "--n-max", "-1"}).code == kExitInvalidInput);
  CHECK(run({"verify", "--alpha-margin", "2"}).code == kExitInvalidInput);
  {
    WorkersEnv env("zero");
    CHECK(run({"verify", "--cases", "2"}).code == kExitInvalidInput);
  }
  {
    WorkersEnv env("0");
    CHECK(run({"verify", "--cases", "2"}).code == kExitInvalidInput);
  }
  WorkersEnv env("2");
  const Run r = run({"verify", "--cases", "6", "--abs-tol", "1e-30", "--rel-tol",
                     "1e-30"});
  CHECK(r.code == kExitVerifyFailed);
  CHECK(json::parse(r.out)["failure_count"].get<int>() > 0);
}

TEST_CASE("table row counts") {
  const Run all = run({"table", "--n-max", "2", "--all-m", "--alpha", "0.7", "--R",
                       "1.5", "--format", "csv"});
  REQUIRE(all.code == kExitOk);
  CHECK(lines(all.out).size() == 1 + 9);

  const Run sel = run({"table", "--n-max", "3", "--m", "0,2", "--alpha", "0.7", "--R",
                       "1,2"});
  REQUIRE(sel.code == kExitOk);
  // m = 0 for n = 0..3 and m = 2 for n = 2, 3; two radii.
  CHECK(json::parse(sel.out).size() == 2 * (4 + 2));

  const Run both = run({"table", "--n-max", "1", "--all-m", "--alpha", "0.7", "--R",
                        "3", "--method", "both"});
  REQUIRE(both.code == kExitOk);
  const json j = json::parse(both.out);
  REQUIRE(j.size() == 2 * 4);
  for (std::size_t i = 0; i < j.size(); i += 2) {
    CHECK(j[i]["method"] == "closed");
    CHECK(j[i + 1]["method"] == "quad");
    CHECK(j[i]["abs_err"].get<double>() <= 1e-10);
    CHECK(j[i]["abs_err"] == j[i + 1]["abs_err"]);
  }
}

TEST_CASE("table examples") {
  const Run r = run({"table", "--n-max", "0", "--all-m", "--alpha", "1", "--R",
                     "3.141592653589793"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(std::abs(j[0]["re"].get<double>()) <= 1e-15);

  const Run z = run({"table", "--n-max", "2", "--all-m", "--alpha", "1", "--R", "0",
                     "--format", "csv"});
  REQUIRE(z.code == kExitOk);
  const auto ls = lines(z.out);
  CHECK(ls[1] == "0,0,1,0,2,0,closed,");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    CHECK(ls[i].find(",0,0,closed,") != std::string::npos);
  }
}

TEST_CASE("table input errors") {
  CHECK(run({"table", "--n-max", "2", "--alpha", "1", "--R", "1"}).code ==
        kExitInvalidInput);
  CHECK(run({"table", "--n-max", "-1", "--all-m", "--alpha", "1", "--R", "1"}).code ==
        kExitInvalidInput);
  CHECK(run({"table", "--n-max", "2", "--all-m", "--alpha", "1", "--R", "1",
             "--method", "guess"}).code == kExitInvalidInput);
  CHECK(run({"table", "--n-max", "2", "--all-m", "--alpha", "1", "--R", "-2"}).code ==
        kExitInvalidInput);
}

TEST_CASE("bench emits one row per (n, R) pair") {
  const Run r = run({"bench", "--n-max", "1", "--R-max", "10", "--reps", "5"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 2);
  for (const auto& row : j) {
    CHECK(row["converged"] == true);
    CHECK(row["reps"] == 5);
    CHECK(row["quad_cv"].is_number());
    CHECK(row["R"].get<double>() == 10.0);
  }
  CHECK(r.err.empty());
}

TEST_CASE("bench with few reps warns and leaves quad_cv empty") {
  const Run r = run({"bench", "--n-max", "0", "--R-max", "1", "--reps", "1", "--format",
                     "csv"});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == std::string(kBenchCsvHeader));
  CHECK(r.err.find("1 repetition") != std::string::npos);
  CHECK(run({"bench", "--reps", "0"}).code == kExitInvalidInput);
}

TEST_CASE("signed zeros print as 0") {
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(-2.5e-300) == "-2.5e-300");
  const OutputRecord r{1, 1, 1.0, 0.0, -0.0, -0.0, Method::Closed, std::nullopt};
  CHECK(to_json(r).dump() == R"({"n":1,"m":1,"alpha":1.0,"R":0.0,"re":0.0,"im":0.0,"method":"closed"})");
}
