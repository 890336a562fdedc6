#include <doctest.h>

#include <cmath>

#include "vhrd/errors.hpp"
#include "vhrd/periodic.hpp"

using namespace vhrd;

namespace {

ModelSpec het_model() {
  return make_parametric_family(HeterogeneityParams{0.5, 0.5, 0.5, 0.5, 0, 0, 0, 0});
}

ScalarState flat(const Grid& grid, double v) {
  return ScalarState{std::vector<double>(grid.node_count(), v), 0.0};
}

}  // namespace

TEST_SUITE("periodic") {
  TEST_CASE("constant logistic orbit settles at the carrying level") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    Grid grid = build_grid(1.0, 30);
    TimeGrid tg = make_time_grid(1.0, 1e-2);
    ScalarOrbit orbit =
        find_periodic_orbit(Species::host, spec, grid, flat(grid, 0.4), tg);
    CHECK(orbit.converged);
    CHECK(orbit.residual < 1e-8);
    CHECK(orbit_residual(orbit) == doctest::Approx(orbit.residual));
    for (const ScalarState& s : orbit.snaps)
      for (double u : s.u) CHECK(u == doctest::Approx(1.0).epsilon(1e-7));
  }

  TEST_CASE("unconverged transients are reported, not fabricated") {
    ModelSpec spec = het_model();
    Grid grid = build_grid(1.0, 20);
    TimeGrid tg = make_time_grid(1.0, 1e-2);
    OrbitOptions opts;
    opts.tol = 1e-14;
    opts.max_periods = 2;
    opts.throw_on_failure = false;
    ScalarOrbit orbit =
        find_periodic_orbit(Species::host, spec, grid, flat(grid, 0.4), tg, opts);
    CHECK_FALSE(orbit.converged);
    CHECK(orbit.residual == doctest::Approx(orbit_residual(orbit)));

    opts.throw_on_failure = true;
    try {
      find_periodic_orbit(Species::host, spec, grid, flat(grid, 0.4), tg, opts);
      FAIL("expected non-convergence");
    } catch (const NonConvergenceError& e) {
      CHECK(e.residual > 1e-14);
      CHECK(e.iterations == 2);
    }
  }

  TEST_CASE("residual is invariant under a time shift of the records") {
    ModelSpec spec = make_constant_model(2, 1, 1, 3, 3, 1, 1, 2);
    Grid grid = build_grid(1.0, 20);
    TimeGrid tg = make_time_grid(1.0, 1e-2);
    ScalarOrbit orbit =
        find_periodic_orbit(Species::host, spec, grid, flat(grid, 0.4), tg);
    ScalarOrbit shifted = orbit;
    for (ScalarState& s : shifted.snaps) s.t += 1.0;
    CHECK(std::abs(orbit_residual(shifted) - orbit_residual(orbit)) <= 1e-12);
  }

  TEST_CASE("full-system orbit is positive in all compartments") {
    ModelSpec spec = het_model();
    Grid grid = build_grid(1.0, 40);
    TimeGrid tg = make_time_grid(1.0, 2e-3);
    OrbitOptions opts;
    opts.tol = 1e-7;
    FullOrbit orbit = find_periodic_orbit(
        spec, grid, StateField::constant(grid, 1.0, 0.2, 1.0, 0.2), tg, opts);
    CHECK(orbit.converged);
    for (const StateField& s : orbit.snaps) {
      CHECK(min_value(s) > 0.0);
    }
  }

  TEST_CASE("orbit is unique and ordered below the logistic totals") {
    ModelSpec spec = het_model();
    Grid grid = build_grid(1.0, 40);
    TimeGrid tg = make_time_grid(1.0, 2e-3);
    OrbitOptions opts;
    opts.tol = 1e-8;

    FullOrbit one = find_periodic_orbit(
        spec, grid, StateField::constant(grid, 1.0, 0.2, 1.0, 0.2), tg, opts);
    FullOrbit two = find_periodic_orbit(
        spec, grid, StateField::constant(grid, 0.3, 0.6, 2.0, 0.05), tg, opts);
    double gap = 0.0;
    for (std::size_t m = 0; m < one.snaps.size(); ++m)
      gap = std::max(gap, sup_distance(one.snaps[m], two.snaps[m]));
    CHECK(gap <= 10 * opts.tol);

    ScalarOrbit host = find_periodic_orbit(Species::host, spec, grid, flat(grid, 1.0),
                                           tg, opts);
    ScalarOrbit vect = find_periodic_orbit(Species::vector, spec, grid, flat(grid, 1.0),
                                           tg, opts);
    for (std::size_t m = 0; m < one.snaps.size(); ++m) {
      for (int i = 0; i < grid.node_count(); ++i) {
        CHECK(one.snaps[m].hi[i] > 0.0);
        CHECK(one.snaps[m].hi[i] < host.snaps[m].u[i]);
        CHECK(one.snaps[m].vi[i] > 0.0);
        CHECK(one.snaps[m].vi[i] < vect.snaps[m].u[i]);
      }
    }
  }

  TEST_CASE("full and reduced orbits agree") {
    ModelSpec spec = het_model();
    Grid grid = build_grid(1.0, 40);
    TimeGrid tg = make_time_grid(1.0, 2e-3);
    OrbitOptions opts;
    opts.tol = 1e-9;

    FullOrbit full = find_periodic_orbit(
        spec, grid, StateField::constant(grid, 1.0, 0.2, 1.0, 0.2), tg, opts);
    ScalarOrbit host =
        find_periodic_orbit(Species::host, spec, grid, flat(grid, 1.0), tg, opts);
    ScalarOrbit vect =
        find_periodic_orbit(Species::vector, spec, grid, flat(grid, 1.0), tg, opts);
    PairState seed;
    seed.hi.assign(grid.node_count(), 0.0);
    seed.vi.assign(grid.node_count(), 0.0);
    for (int i = 0; i < grid.node_count(); ++i) {
      seed.hi[i] = 0.5 * host.snaps[0].u[i];
      seed.vi[i] = 0.5 * vect.snaps[0].u[i];
    }
    PairOrbit reduced = find_periodic_orbit(spec, grid, host, vect, seed, tg, opts);

    double gap = 0.0;
    for (std::size_t m = 0; m < full.snaps.size(); ++m) {
      gap = std::max(gap, sup_distance(full.snaps[m].hi, reduced.snaps[m].hi));
      gap = std::max(gap, sup_distance(full.snaps[m].vi, reduced.snaps[m].vi));
    }
    CHECK(gap <= 1e-4);
  }

  TEST_CASE("subcritical host component collapses to zero") {
    ModelSpec spec = make_constant_model(1, 2, 1, 3, 3, 1, 1, 2);
    Grid grid = build_grid(1.0, 25);
    TimeGrid tg = make_time_grid(1.0, 1e-2);
    OrbitOptions opts;
    opts.tol = 1e-9;
    FullOrbit orbit = find_periodic_orbit(
        spec, grid, StateField::constant(grid, 0.5, 0.2, 1.0, 0.2), tg, opts);
    CHECK(sup_norm(orbit.snaps.back().hu) <= 1e-7);
    CHECK(sup_norm(orbit.snaps.back().hi) <= 1e-7);
    CHECK(sup_norm(orbit.snaps.back().vi) <= 1e-7);
  }
}
