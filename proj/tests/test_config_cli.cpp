#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vhrd/cli.hpp"
#include "vhrd/config.hpp"
#include "vhrd/csv.hpp"
#include "vhrd/errors.hpp"
#include "vhrd/parallel.hpp"

using namespace vhrd;
using nlohmann::json;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path(std::string("/tmp/vhrd_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& text) {
    std::ofstream out(path);
    out << text;
  }
  std::string read() const {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
};

}  // namespace

TEST_SUITE("config_cli") {
  TEST_CASE("section5 model document") {
    json doc = {{"family",
                 {{"type", "section5"},
                  {"p", {0.5, 0.5, 0.5, 0.5}},
                  {"q", {0.0, 0.0, 0.0, 0.0}}}}};
    ModelSpec spec = model_from_json(doc);
    CHECK(spec.length == 1.0);
    CHECK(spec.coeffs.a1(0.0, 0.0) == doctest::Approx(4.5));
    CHECK(spec.bc_host.alpha == 1);
    CHECK(validate_model(spec).pass);
  }

  TEST_CASE("constant model document with boundary override") {
    json doc = {{"family",
                 {{"type", "constant"},
                  {"a1", 2.0}, {"b1", 1.0}, {"c1", 1.0}, {"l1", 3.0},
                  {"a2", 3.0}, {"b2", 1.0}, {"c2", 1.0}, {"l2", 2.0}}},
                {"bc_host", {{"alpha", 0}, {"beta", 1.0}}},
                {"bc_vector", {{"alpha", 1}, {"beta", "0.2*(1+cos(pi*x))"}}}};
    ModelSpec spec = model_from_json(doc);
    CHECK(spec.bc_host.dirichlet());
    CHECK(spec.bc_vector.beta(0.0, 0.0) == doctest::Approx(0.4));
    CHECK(spec.bc_vector.beta(1.0, 0.0) == doctest::Approx(0.0));
  }

  TEST_CASE("custom-expression model document") {
    json fam = {{"type", "custom-expression"}};
    for (const char* k : {"d1", "d2"}) fam[k] = "0.1";
    fam["a1"] = "2*(1+0.3*cos(pi*x))";
    fam["a2"] = "3";
    fam["b1"] = "1";
    fam["b2"] = "2*(1+0.5*cos(2*pi*t))";
    fam["c1"] = "1";
    fam["c2"] = "1";
    fam["l1"] = "3";
    fam["l2"] = "2";
    json doc = {{"length", 1.0},
                {"period", 1.0},
                {"family", fam},
                {"bc_host", {{"alpha", 1}, {"beta", 0.0}}},
                {"bc_vector", {{"alpha", 1}, {"beta", 0.0}}}};
    ModelSpec spec = model_from_json(doc);
    CHECK(spec.coeffs.a1(0.0, 0.0) == doctest::Approx(2.6));
    CHECK(spec.coeffs.b2(0.3, 0.5) == doctest::Approx(1.0));
    CHECK(validate_model(spec).pass);

    doc.erase("bc_host");
    CHECK_THROWS_AS(model_from_json(doc), ConfigError);
  }

  TEST_CASE("config rejections") {
    CHECK_THROWS_AS(model_from_json(json{{"family", {{"type", "nope"}}}}), ConfigError);
    json doc = {{"family", {{"type", "constant"}, {"a1", 2.0}}}};
    CHECK_THROWS_AS(model_from_json(doc), ConfigError);
  }

  TEST_CASE("numerics block") {
    json doc = {{"numerics", {{"grid_n", 100}, {"dt", 0.002}, {"eigen_dt", 0.0005}}}};
    Numerics n = numerics_from_json(doc);
    CHECK(n.grid_n == 100);
    CHECK(n.solver_grid(1.0).steps_per_period == 500);
    CHECK(n.eigen_grid(1.0).steps_per_period == 2000);

    Numerics defaults = numerics_from_json(json::object());
    CHECK(defaults.grid_n == 200);
    CHECK(defaults.solver_grid(1.0).steps_per_period == 1000);
    CHECK(defaults.eigen_grid(1.0).steps_per_period == 8000);

    json bad = {{"numerics", {{"grid_n", 3}}}};
    CHECK_THROWS_AS(numerics_from_json(bad), NumericsError);
  }

  TEST_CASE("cli r0 on the constant family") {
    TempFile out("r0.json");
    int code = run_cli({"r0", "--family", "constant", "--params", "2,1,1,3,3,1,1,2",
                        "--grid-n", "40", "--eigen-dt", "0.001", "--out", out.path});
    CHECK(code == kExitOk);
    json rec = json::parse(out.read());
    CHECK(rec["schema_version"] == "1");
    CHECK(rec["R01"].get<double>() == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(rec["R02"].get<double>() == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(rec["R0"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
    CHECK(rec["lambda"].get<double>() < 0.0);
    CHECK(rec["diagnostics"]["sign_consistent"].get<bool>());
  }

  TEST_CASE("cli eigen via a config document") {
    TempFile cfg("model.json");
    TempFile out("eigen.json");
    cfg.write(R"({"family": {"type": "constant",
                  "a1": 2.0, "b1": 1.0, "c1": 1.0, "l1": 3.0,
                  "a2": 3.0, "b2": 2.0, "c2": 1.0, "l2": 2.0},
                  "numerics": {"grid_n": 40, "eigen_dt": 0.001}})");
    int code = run_cli({"eigen", "--config", cfg.path, "--grid-n", "40",
                        "--eigen-dt", "0.001", "--out", out.path});
    CHECK(code == kExitOk);
    json rec = json::parse(out.read());
    CHECK(rec["zeta1"].get<double>() == doctest::Approx(-1.0).epsilon(1e-2));
    CHECK(rec["zeta2"].get<double>() == doctest::Approx(-1.0).epsilon(1e-2));
  }

  TEST_CASE("cli rejects bad numerics with the dedicated exit code") {
    int code = run_cli({"eigen", "--family", "constant", "--params",
                        "2,1,1,3,3,1,1,2", "--grid-n", "3"});
    CHECK(code == kExitNumerics);
  }

  TEST_CASE("cli usage errors") {
    CHECK(run_cli({"frobnicate"}) == kExitUsage);
    CHECK(run_cli({}) == kExitUsage);
    // missing required --p/--q for the section5 family
    CHECK(run_cli({"r0", "--family", "section5"}) == kExitConfig);
  }

  TEST_CASE("cli simulate round trips through the csv reader") {
    TempFile out("traj.csv");
    int code = run_cli({"simulate", "--family", "constant", "--params",
                        "2,1,1,3,3,1,1,2", "--init", "1,0.1,1,0.1", "--t-end", "0.1",
                        "--grid-n", "16", "--dt", "0.01", "--out", out.path});
    CHECK(code == kExitOk);
    ParsedCsv parsed = read_csv(out.path);
    REQUIRE(parsed.header.size() == 6);
    CHECK(parsed.header[0] == "t");
    CHECK(parsed.header[2] == "hu");
    CHECK(parsed.rows.size() == 11u * 17u);
    for (const auto& row : parsed.rows)
      for (const auto& cell : row) CHECK(cell.has_value());

    TempFile avg("avg.csv");
    code = run_cli({"simulate", "--family", "constant", "--params", "2,1,1,3,3,1,1,2",
                    "--init", "1,0.1,1,0.1", "--t-end", "0.1", "--grid-n", "16",
                    "--dt", "0.01", "--averages", "--out", avg.path});
    CHECK(code == kExitOk);
    ParsedCsv avg_parsed = read_csv(avg.path);
    CHECK(avg_parsed.header.size() == 5);
    CHECK(avg_parsed.rows.size() == 11);
  }

  TEST_CASE("cli periodic emits an orbit and diagnostics") {
    TempFile orbit("orbit.csv");
    TempFile diag("orbit_diag.json");
    int code = run_cli({"periodic", "--family", "constant", "--params",
                        "2,1,1,3,3,1,1,2", "--system", "host", "--init", "0.5",
                        "--grid-n", "16", "--dt", "0.01", "--out", orbit.path,
                        "--diag", diag.path});
    CHECK(code == kExitOk);
    json rec = json::parse(diag.read());
    CHECK(rec["converged"].get<bool>());
    CHECK(rec["residual"].get<double>() < 1e-8);
    ParsedCsv parsed = read_csv(orbit.path);
    CHECK(parsed.header == std::vector<std::string>{"t", "x", "H"});
    CHECK(parsed.rows.size() == 101u * 17u);
  }

  TEST_CASE("cli sweep writes a deterministic table plus metadata") {
    TempFile csv1("sweep1.csv");
    TempFile csv2("sweep2.csv");
    TempFile meta("sweep_meta.json");
    std::vector<std::string> args = {
        "sweep", "--vary", "p3=-0.5:0.5:3", "--outputs", "R0", "--grid-n", "16",
        "--dt", "0.004", "--workers", "0", "--out", csv1.path, "--metadata", meta.path};
    CHECK(run_cli(args) == kExitOk);
    args[12] = csv2.path;  // --out
    args[10] = "2";        // --workers
    CHECK(run_cli(args) == kExitOk);
    CHECK(csv1.read() == csv2.read());
    json rec = json::parse(meta.read());
    CHECK(rec["varied"][0]["name"] == "p3");
    CHECK(rec["resolution"]["grid_n"] == 16);
  }

  TEST_CASE("cli verify-constant stays within tolerance") {
    TempFile out("verify.json");
    int code = run_cli({"verify-constant", "--params", "2,1,1,3,3,1,1,2", "--grid-n",
                        "40", "--eigen-dt", "0.00025", "--out", out.path});
    CHECK(code == kExitOk);
    json rec = json::parse(out.read());
    CHECK(rec["max_rel_gap"].get<double>() < 1e-3);
    CHECK(rec["regime"] == "ENDEMIC");
  }

  TEST_CASE("cli dynamics-check single scenario") {
    TempFile out("dyn.json");
    int code = run_cli({"dynamics-check", "--family", "constant", "--params",
                        "2,1,1,3,3,1,1,2", "--init", "1.2,0.3,1.5,0.4", "--horizon",
                        "50", "--tol", "0.001", "--grid-n", "40", "--dt", "0.002",
                        "--eigen-dt", "0.001", "--out", out.path});
    CHECK(code == kExitOk);
    json rec = json::parse(out.read());
    CHECK(rec["verdict"] == "pass");
    CHECK(rec["predicted_case"] == "endemic");
    CHECK(rec["R0"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  }

  TEST_CASE("cli simulate --modified with recovery") {
    TempFile out("modified.csv");
    int code = run_cli({"simulate", "--modified", "--family", "constant", "--params",
                        "2,1,1,3,3,1,1,2", "--gamma", "0.5", "--init", "0.6,0.4,1.2,0.6",
                        "--t-end", "0.2", "--grid-n", "16", "--dt", "0.01",
                        "--averages", "--out", out.path});
    CHECK(code == kExitOk);
    ParsedCsv parsed = read_csv(out.path);
    CHECK(parsed.rows.size() == 21);
    // recovery moves mass from infected to susceptible hosts but the total is
    // preserved up to the scheme's first-order coupling
    double total0 = *parsed.rows[0][1] + *parsed.rows[0][2];
    double total1 = *parsed.rows.back()[1] + *parsed.rows.back()[2];
    CHECK(std::abs(total1 - total0) < 0.05);

    // hostile boundaries are rejected for the standard-incidence model
    TempFile cfg("modified_bad.json");
    cfg.write(R"({"family": {"type": "constant",
                  "a1": 2.0, "b1": 1.0, "c1": 1.0, "l1": 3.0,
                  "a2": 3.0, "b2": 1.0, "c2": 1.0, "l2": 2.0, "gamma": 0.5},
                  "bc_host": {"alpha": 0, "beta": 1.0}})");
    int bad = run_cli({"simulate", "--modified", "--config", cfg.path, "--init",
                       "0.6,0.4,1.2,0.6", "--t-end", "0.1", "--grid-n", "16", "--dt",
                       "0.01"});
    CHECK(bad == kExitUnsupported);
  }

  TEST_CASE("worker count override from the environment") {
    setenv("VHRD_WORKERS", "3", 1);
    CHECK(workers_from_env(-1) == 3);
    setenv("VHRD_WORKERS", "junk", 1);
    CHECK_THROWS_AS(workers_from_env(-1), ConfigError);
    unsetenv("VHRD_WORKERS");
    CHECK(workers_from_env(-1) == -1);
    CHECK(workers_from_env(0) == 0);
  }

  TEST_CASE("cli dynamics-check batch") {
    TempFile batch("batch.json");
    TempFile out("batch_out.json");
    batch.write(R"([
      {"name": "endemic",
       "family": {"type": "constant", "a1": 2, "b1": 1, "c1": 1, "l1": 3,
                  "a2": 3, "b2": 1, "c2": 1, "l2": 2},
       "init": [1.2, 0.3, 1.5, 0.4], "horizon": 50, "tol": 0.001},
      {"name": "extinct",
       "family": {"type": "constant", "a1": 1, "b1": 2, "c1": 1, "l1": 3,
                  "a2": 2, "b2": 3, "c2": 1, "l2": 2},
       "init": [0.5, 0.2, 0.5, 0.2], "horizon": 40, "tol": 0.001}
    ])");
    int code = run_cli({"dynamics-check", "--batch", batch.path, "--grid-n", "40",
                        "--dt", "0.002", "--eigen-dt", "0.001", "--workers", "2",
                        "--out", out.path});
    CHECK(code == kExitOk);
    json rec = json::parse(out.read());
    REQUIRE(rec.size() == 2);
    CHECK(rec[0]["verdict"] == "pass");
    CHECK(rec[1]["verdict"] == "pass");
    CHECK(rec[1]["predicted_case"] == "all-extinct");
  }
}
