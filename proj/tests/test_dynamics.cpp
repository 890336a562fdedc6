#include <doctest.h>

#include <cmath>

#include "vhrd/analytic.hpp"
#include "vhrd/dynamics.hpp"

using namespace vhrd;

namespace {

DynamicsOptions quick_opts(int horizon, double tol = 1e-3) {
  DynamicsOptions opts;
  opts.horizon_periods = horizon;
  opts.tol = tol;
  opts.grid_n = 40;
  opts.solver_steps_per_period = 500;
  opts.eigen_steps_per_period = 1000;
  return opts;
}

StateField flat_init(const ModelSpec& spec, int grid_n, double hu, double hi, double vu,
                     double vi) {
  Grid grid = build_grid(spec.length, grid_n);
  return StateField::constant(grid, hu, hi, vu, vi);
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("endemic constants settle on the closed-form equilibrium") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    DynamicsOptions opts = quick_opts(60);
    DynamicsReport rep =
        check_threshold_dynamics(spec, flat_init(spec, 40, 1.2, 0.3, 1.5, 0.4), opts);
    CHECK(rep.predicted == PredictedCase::endemic);
    CHECK(rep.verdict == "pass");
    CHECK(rep.measured_gap <= opts.tol);
    CHECK(*rep.r0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
  }

  TEST_CASE("strictly disease-free constants lose the infection") {
    ModelSpec spec = make_constant_model(2, 1, 1, 1, 3, 2, 1, 1);
    DynamicsOptions opts = quick_opts(50);
    DynamicsReport rep =
        check_threshold_dynamics(spec, flat_init(spec, 40, 0.8, 0.4, 0.9, 0.5), opts);
    CHECK(rep.predicted == PredictedCase::disease_free);
    CHECK(rep.verdict == "pass");
    CHECK(*rep.r0 < 1.0);
  }

  TEST_CASE("host-subcritical constants keep only the vector") {
    ModelSpec spec = make_constant_model(1, 2, 1, 3, 3, 1, 1, 2);
    DynamicsOptions opts = quick_opts(50);
    DynamicsReport rep =
        check_threshold_dynamics(spec, flat_init(spec, 40, 0.5, 0.2, 1.0, 0.3), opts);
    CHECK(rep.predicted == PredictedCase::host_extinct);
    CHECK(rep.verdict == "pass");
    CHECK_FALSE(rep.r0.has_value());
  }

  TEST_CASE("doubly subcritical constants lose everything") {
    ModelSpec spec = make_constant_model(1, 2, 1, 3, 2, 3, 1, 2);
    DynamicsOptions opts = quick_opts(40);
    DynamicsReport rep =
        check_threshold_dynamics(spec, flat_init(spec, 40, 0.5, 0.2, 0.5, 0.2), opts);
    CHECK(rep.predicted == PredictedCase::all_extinct);
    CHECK(rep.verdict == "pass");
  }

  TEST_CASE("prediction agrees with the closed-form regime map") {
    struct Case {
      ConstantParams p;
      PredictedCase expected;
    };
    const Case cases[] = {
        {{2, 1, 1, 3, 3, 1, 1, 2, std::nullopt}, PredictedCase::endemic},
        {{2, 1, 1, 1, 3, 2, 1, 1, std::nullopt}, PredictedCase::disease_free},
        {{1, 2, 1, 3, 3, 1, 1, 2, std::nullopt}, PredictedCase::host_extinct},
        {{2, 1, 1, 3, 2, 3, 1, 2, std::nullopt}, PredictedCase::vector_extinct},
        {{1, 2, 1, 3, 2, 3, 1, 2, std::nullopt}, PredictedCase::all_extinct},
    };
    for (const Case& c : cases) {
      ModelSpec spec = make_constant_model(c.p.a1, c.p.b1, c.p.c1, c.p.l1, c.p.a2,
                                           c.p.b2, c.p.c2, c.p.l2);
      DynamicsOptions opts = quick_opts(40, 5e-3);
      DynamicsReport rep =
          check_threshold_dynamics(spec, flat_init(spec, 40, 0.7, 0.2, 0.8, 0.2), opts);
      CHECK(rep.predicted == c.expected);
      Regime regime = classify_regime(c.p);
      switch (regime) {
        case Regime::endemic: CHECK(rep.predicted == PredictedCase::endemic); break;
        case Regime::disease_free:
          CHECK(rep.predicted == PredictedCase::disease_free);
          break;
        case Regime::host_extinct:
          CHECK(rep.predicted == PredictedCase::host_extinct);
          break;
        case Regime::vector_extinct:
          CHECK(rep.predicted == PredictedCase::vector_extinct);
          break;
        case Regime::all_extinct:
          CHECK(rep.predicted == PredictedCase::all_extinct);
          break;
      }
    }
  }

  TEST_CASE("dead band yields threshold-indeterminate") {
    ModelSpec spec = make_constant_model(2.0 * (1.0 + 5e-5), 2.0, 1, 3, 3, 1, 1, 2);
    DynamicsOptions opts = quick_opts(10);
    DynamicsReport rep =
        check_threshold_dynamics(spec, flat_init(spec, 40, 0.5, 0.1, 0.5, 0.1), opts);
    CHECK(rep.predicted == PredictedCase::indeterminate);
    CHECK(rep.verdict == "threshold-indeterminate");
  }

  TEST_CASE("insufficient horizon fails with diagnostics") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    DynamicsOptions opts = quick_opts(2, 1e-6);
    DynamicsReport rep =
        check_threshold_dynamics(spec, flat_init(spec, 40, 0.1, 0.05, 0.1, 0.05), opts);
    CHECK(rep.verdict == "fail");
    CHECK_FALSE(rep.detail.empty());
  }

  TEST_CASE("batch runs agree across worker counts") {
    std::vector<DynamicsScenario> scenarios(2);
    scenarios[0].name = "endemic";
    scenarios[0].spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    scenarios[0].init = flat_init(scenarios[0].spec, 40, 1.2, 0.3, 1.5, 0.4);
    scenarios[0].opts = quick_opts(50);
    scenarios[1].name = "extinct";
    scenarios[1].spec = make_constant_model(1, 2, 1, 3, 2, 3, 1, 2);
    scenarios[1].init = flat_init(scenarios[1].spec, 40, 0.5, 0.2, 0.5, 0.2);
    scenarios[1].opts = quick_opts(40);

    std::vector<DynamicsReport> serial = check_threshold_dynamics_batch(scenarios, 0);
    std::vector<DynamicsReport> parallel = check_threshold_dynamics_batch(scenarios, 2);
    REQUIRE(serial.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(serial[i].verdict == "pass");
      CHECK(parallel[i].verdict == serial[i].verdict);
      CHECK(parallel[i].measured_gap == doctest::Approx(serial[i].measured_gap));
    }
  }
}
