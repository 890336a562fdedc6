#include "vhrd/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "vhrd/errors.hpp"
#include "vhrd/parallel.hpp"
#include "vhrd/periodic.hpp"
#include "vhrd/spectral.hpp"

namespace vhrd {

std::string predicted_case_name(PredictedCase c) {
  switch (c) {
    case PredictedCase::endemic: return "endemic";
    case PredictedCase::disease_free: return "disease-free";
    case PredictedCase::host_extinct: return "host-extinct";
    case PredictedCase::vector_extinct: return "vector-extinct";
    case PredictedCase::all_extinct: return "all-extinct";
    case PredictedCase::indeterminate: return "threshold-indeterminate";
  }
  return "?";
}

namespace {

struct PredictedOrbit {
  // per step 0..M: nodal values of (hu, hi, vu, vi)
  std::vector<StateField> snaps;
};

ScalarOrbit zero_orbit(const Grid& grid, const TimeGrid& tg) {
  ScalarOrbit orbit;
  orbit.dt = tg.dt();
  orbit.converged = true;
  orbit.snaps.resize(tg.steps_per_period + 1);
  for (int m = 0; m <= tg.steps_per_period; ++m) {
    orbit.snaps[m].u.assign(grid.node_count(), 0.0);
    orbit.snaps[m].t = m * tg.dt();
  }
  return orbit;
}

}  // namespace

DynamicsReport check_threshold_dynamics(const ModelSpec& spec, const StateField& init,
                                        const DynamicsOptions& opts) {
  DynamicsReport report;
  report.horizon_periods = opts.horizon_periods;
  report.tol = opts.tol;

  Grid grid = build_grid(spec.length, opts.grid_n);
  TimeGrid tg_solver{spec.period, opts.solver_steps_per_period};
  TimeGrid tg_eigen{spec.period, opts.eigen_steps_per_period};
  SpectralOptions sopts;

  report.r01 = basic_reproduction_scalar(spec, grid, tg_eigen, Species::host, sopts).value;
  report.r02 =
      basic_reproduction_scalar(spec, grid, tg_eigen, Species::vector, sopts).value;

  auto in_band = [&](double r) { return std::abs(r - 1.0) <= opts.dead_band; };
  if (in_band(report.r01) || in_band(report.r02)) {
    report.predicted = PredictedCase::indeterminate;
    report.verdict = "threshold-indeterminate";
    report.detail = "a species reproduction number sits inside the dead band";
    return report;
  }

  OrbitOptions oopts;
  oopts.tol = opts.orbit_tol;
  oopts.max_periods = opts.max_periods;
  oopts.throw_on_failure = false;

  bool host_super = report.r01 > 1.0;
  bool vector_super = report.r02 > 1.0;

  if (host_super && vector_super) {
    // both species persist; the disease threshold decides between the
    // disease-free and endemic periodic states
    ScalarState ones{std::vector<double>(grid.node_count(), 1.0), 0.0};
    ScalarOrbit host_eigen_orbit =
        find_periodic_orbit(Species::host, spec, grid, ones, tg_eigen, oopts);
    ScalarOrbit vector_eigen_orbit =
        find_periodic_orbit(Species::vector, spec, grid, ones, tg_eigen, oopts);
    if (!host_eigen_orbit.converged || !vector_eigen_orbit.converged) {
      report.verdict = "fail";
      report.detail = "logistic orbit extraction did not converge";
      return report;
    }
    R0Result r0 = basic_reproduction_coupled(spec, grid, tg_eigen, host_eigen_orbit,
                                             vector_eigen_orbit, sopts);
    report.r0 = r0.value;
    if (in_band(r0.value)) {
      report.predicted = PredictedCase::indeterminate;
      report.verdict = "threshold-indeterminate";
      report.detail = "R0 sits inside the dead band";
      return report;
    }
    report.predicted =
        r0.value > 1.0 ? PredictedCase::endemic : PredictedCase::disease_free;
  } else if (!host_super && vector_super) {
    report.predicted = PredictedCase::host_extinct;
  } else if (host_super && !vector_super) {
    report.predicted = PredictedCase::vector_extinct;
  } else {
    report.predicted = PredictedCase::all_extinct;
  }

  // predicted limit orbit at solver resolution
  ScalarState ones{std::vector<double>(grid.node_count(), 1.0), 0.0};
  ScalarOrbit host_orbit = host_super
                               ? find_periodic_orbit(Species::host, spec, grid, ones,
                                                     tg_solver, oopts)
                               : zero_orbit(grid, tg_solver);
  ScalarOrbit vector_orbit = vector_super
                                 ? find_periodic_orbit(Species::vector, spec, grid,
                                                       ones, tg_solver, oopts)
                                 : zero_orbit(grid, tg_solver);
  if (!host_orbit.converged || !vector_orbit.converged) {
    report.verdict = "fail";
    report.detail = "logistic orbit extraction did not converge at solver resolution";
    return report;
  }

  PairOrbit infected;
  if (report.predicted == PredictedCase::endemic) {
    PairState seed;
    seed.hi.resize(grid.node_count());
    seed.vi.resize(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) {
      seed.hi[i] = 0.5 * host_orbit.snaps[0].u[i];
      seed.vi[i] = 0.5 * vector_orbit.snaps[0].u[i];
    }
    infected =
        find_periodic_orbit(spec, grid, host_orbit, vector_orbit, seed, tg_solver, oopts);
    if (!infected.converged) {
      report.verdict = "fail";
      report.detail = "reduced infection orbit did not converge";
      return report;
    }
  }

  const int steps = tg_solver.steps_per_period;
  PredictedOrbit predicted;
  predicted.snaps.resize(steps + 1);
  for (int m = 0; m <= steps; ++m) {
    StateField& s = predicted.snaps[m];
    int n = grid.node_count();
    s.hu.assign(n, 0.0);
    s.hi.assign(n, 0.0);
    s.vu.assign(n, 0.0);
    s.vi.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double hi = report.predicted == PredictedCase::endemic ? infected.snaps[m].hi[i] : 0.0;
      double vi = report.predicted == PredictedCase::endemic ? infected.snaps[m].vi[i] : 0.0;
      s.hu[i] = host_orbit.snaps[m].u[i] - hi;
      s.hi[i] = hi;
      s.vu[i] = vector_orbit.snaps[m].u[i] - vi;
      s.vi[i] = vi;
    }
  }

  // long march, then one recorded period
  try {
    StateField state = init;
    if (opts.horizon_periods > 1) {
      Trajectory head = simulate_full(spec, grid, std::move(state),
                                      (opts.horizon_periods - 1) * spec.period,
                                      tg_solver, steps);
      state = head.snapshots.back();
    }
    Trajectory tail = simulate_full(spec, grid, std::move(state), spec.period,
                                    tg_solver, 1);
    double gap = 0.0;
    for (int m = 0; m <= steps; ++m)
      gap = std::max(gap, sup_distance(tail.snapshots[m], predicted.snaps[m]));
    report.measured_gap = gap;
    report.verdict = gap <= opts.tol ? "pass" : "fail";
    if (report.verdict == "fail") {
      std::ostringstream os;
      os << "final-period gap " << gap << " exceeds tol " << opts.tol
         << " (horizon may be insufficient near a threshold)";
      report.detail = os.str();
    }
  } catch (const Error& e) {
    report.verdict = "fail";
    report.detail = e.what();
  }
  return report;
}

std::vector<DynamicsReport> check_threshold_dynamics_batch(
    const std::vector<DynamicsScenario>& scenarios, int workers) {
  std::vector<DynamicsReport> reports(scenarios.size());
  parallel_for(static_cast<int>(scenarios.size()), workers, [&](int i) {
    try {
      reports[i] = check_threshold_dynamics(scenarios[i].spec, scenarios[i].init,
                                            scenarios[i].opts);
    } catch (const std::exception& e) {
      reports[i].verdict = "fail";
      reports[i].detail = e.what();
    }
  });
  return reports;
}

}  // namespace vhrd
