#include "vhrd/periodic.hpp"

#include <cmath>

#include "vhrd/errors.hpp"

namespace vhrd {

namespace {

template <class State, class StepFn>
OrbitT<State> march_to_orbit(StepFn&& step, State state, const TimeGrid& tg,
                             const OrbitOptions& opts, const char* label) {
  const double dt = tg.dt();
  const int steps = tg.steps_per_period;

  double gap = 0.0;
  bool converged = false;
  int period = 0;
  for (; period < opts.max_periods; ++period) {
    State previous = state;
    for (int k = 0; k < steps; ++k) step(state);
    gap = sup_distance(state, previous);
    if (gap < opts.tol) {
      converged = true;
      ++period;
      break;
    }
  }
  if (!converged && opts.throw_on_failure)
    throw NonConvergenceError(std::string(label) + " orbit extraction", gap, period);

  OrbitT<State> orbit;
  orbit.dt = dt;
  orbit.converged = converged;
  orbit.snaps.reserve(steps + 1);
  orbit.snaps.push_back(state);
  for (int k = 0; k < steps; ++k) {
    step(state);
    orbit.snaps.push_back(state);
  }
  orbit.periods_used = period + 1;
  orbit.residual = sup_distance(orbit.snaps.back(), orbit.snaps.front());
  return orbit;
}

}  // namespace

ScalarOrbit find_periodic_orbit(Species which, const ModelSpec& spec, const Grid& grid,
                                ScalarState init, const TimeGrid& tg,
                                const OrbitOptions& opts) {
  LogisticSystem system(spec, grid, which);
  if (system.bc().dirichlet()) {
    init.u.front() = 0.0;
    init.u.back() = 0.0;
  }
  const double dt = tg.dt();
  return march_to_orbit([&](ScalarState& s) { system.step(s, dt); }, std::move(init),
                        tg, opts, which == Species::host ? "host logistic" : "vector logistic");
}

FullOrbit find_periodic_orbit(const ModelSpec& spec, const Grid& grid, StateField init,
                              const TimeGrid& tg, const OrbitOptions& opts) {
  project_dirichlet(spec, grid, init);
  FullSystem system(spec, grid);
  const double dt = tg.dt();
  return march_to_orbit([&](StateField& s) { system.step(s, dt); }, std::move(init),
                        tg, opts, "full system");
}

PairOrbit find_periodic_orbit(const ModelSpec& spec, const Grid& grid,
                              const ScalarOrbit& host_orbit,
                              const ScalarOrbit& vector_orbit, PairState init,
                              const TimeGrid& tg, const OrbitOptions& opts) {
  ReducedSystem system(spec, grid, host_orbit, vector_orbit);
  const double dt = tg.dt();
  return march_to_orbit([&](PairState& s) { system.step(s, dt); }, std::move(init),
                        tg, opts, "reduced infection system");
}

}  // namespace vhrd
