#ifndef VHRD_PERIODIC_HPP
#define VHRD_PERIODIC_HPP

#include "vhrd/solver.hpp"

namespace vhrd {

struct OrbitOptions {
  double tol = 1e-8;      // sup-norm gap between consecutive period snapshots
  int max_periods = 5000;
  bool throw_on_failure = true;
};

// Marches whole periods until consecutive period-boundary snapshots agree
// within tol, then records one further period as the orbit. Near-threshold
// problems decay algebraically and may hit max_periods; with
// throw_on_failure unset the unconverged orbit is returned with
// converged = false.
ScalarOrbit find_periodic_orbit(Species which, const ModelSpec& spec, const Grid& grid,
                                ScalarState init, const TimeGrid& tg,
                                const OrbitOptions& opts = {});

FullOrbit find_periodic_orbit(const ModelSpec& spec, const Grid& grid, StateField init,
                              const TimeGrid& tg, const OrbitOptions& opts = {});

PairOrbit find_periodic_orbit(const ModelSpec& spec, const Grid& grid,
                              const ScalarOrbit& host_orbit,
                              const ScalarOrbit& vector_orbit, PairState init,
                              const TimeGrid& tg, const OrbitOptions& opts = {});

// Sup-norm gap between the recorded period's last and first snapshots.
template <class State>
double orbit_residual(const OrbitT<State>& orbit) {
  if (orbit.snaps.size() < 2)
    throw ValidationError("orbit has fewer than two snapshots");
  return sup_distance(orbit.snaps.back(), orbit.snaps.front());
}

}  // namespace vhrd

#endif
