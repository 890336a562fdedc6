#ifndef VHRD_SOLVER_HPP
#define VHRD_SOLVER_HPP

#include <vector>

#include "vhrd/grid.hpp"
#include "vhrd/model.hpp"
#include "vhrd/tridiagonal.hpp"

namespace vhrd {

// Time axis of one run: dt must divide the period (within 1e-12 relative);
// the effective step is period/steps_per_period exactly.
struct TimeGrid {
  double period = 1.0;
  int steps_per_period = 1000;

  double dt() const { return period / steps_per_period; }
};

TimeGrid make_time_grid(double period, double dt);

// Nodal densities of the four compartments; Dirichlet components vanish at
// the end nodes.
struct StateField {
  std::vector<double> hu, hi, vu, vi;
  double t = 0.0;

  static StateField constant(const Grid& grid, double hu0, double hi0, double vu0,
                             double vi0);
};

struct ScalarState {
  std::vector<double> u;
  double t = 0.0;
};

struct PairState {
  std::vector<double> hi, vi;
  double t = 0.0;
};

template <class State>
struct TrajectoryT {
  std::vector<State> snapshots;
  double dt = 0.0;
  int stride = 1;  // snapshots kept every `stride` steps
};

using Trajectory = TrajectoryT<StateField>;
using ScalarTrajectory = TrajectoryT<ScalarState>;
using PairTrajectory = TrajectoryT<PairState>;

enum class Species { host, vector };

// One period of a converged T-periodic solution: snapshots at every step,
// snaps[0] at the period start and snaps[steps] at its end.
template <class State>
struct OrbitT {
  std::vector<State> snaps;
  double dt = 0.0;
  double residual = 0.0;
  int periods_used = 0;
  bool converged = false;

  int steps() const { return static_cast<int>(snaps.size()) - 1; }
};

using ScalarOrbit = OrbitT<ScalarState>;
using PairOrbit = OrbitT<PairState>;
using FullOrbit = OrbitT<StateField>;

// ---------------------------------------------------------------------------
// Steppers. One step advances the state from t to t + dt with coefficient
// fields evaluated at t + dt, sink terms implicit with coefficients frozen at
// the previous state, and sources explicit. The infection transfer uses the
// identical discrete value as drain and as source, so compartment sums follow
// the scalar logistic step exactly.
// ---------------------------------------------------------------------------

class FullSystem {
 public:
  FullSystem(const ModelSpec& spec, const Grid& grid);

  void step(StateField& state, double dt) const;
  const Grid& grid() const { return grid_; }
  const ModelSpec& spec() const { return *spec_; }

 private:
  const ModelSpec* spec_;
  Grid grid_;
};

class LogisticSystem {
 public:
  LogisticSystem(const ModelSpec& spec, const Grid& grid, Species which);

  void step(ScalarState& state, double dt) const;
  const Grid& grid() const { return grid_; }
  Species which() const { return which_; }
  const BoundaryCondition& bc() const;

 private:
  const ModelSpec* spec_;
  Grid grid_;
  Species which_;
};

// Infection pair driven by frozen periodic totals H and V. The orbits must
// share the reduced run's grid and step size.
class ReducedSystem {
 public:
  ReducedSystem(const ModelSpec& spec, const Grid& grid, const ScalarOrbit& host_orbit,
                const ScalarOrbit& vector_orbit);

  void step(PairState& state, double dt) const;
  const Grid& grid() const { return grid_; }
  const ScalarOrbit& host_orbit() const { return *host_orbit_; }
  const ScalarOrbit& vector_orbit() const { return *vector_orbit_; }

 private:
  const ModelSpec* spec_;
  Grid grid_;
  const ScalarOrbit* host_orbit_;
  const ScalarOrbit* vector_orbit_;
};

// Standard-incidence variant with recovery; no-flux/Robin boundaries only.
class ModifiedSystem {
 public:
  ModifiedSystem(const ModelSpec& spec, const Grid& grid);

  void step(StateField& state, double dt) const;
  const Grid& grid() const { return grid_; }

 private:
  const ModelSpec* spec_;
  Grid grid_;
};

// ---------------------------------------------------------------------------
// Simulation drivers. Every step asserts positivity (floor -1e-12) and the
// logistic boundedness cap; snapshots are kept every `snapshot_stride` steps
// (plus the final state).
// ---------------------------------------------------------------------------

Trajectory simulate_full(const ModelSpec& spec, const Grid& grid, StateField init,
                         double t_end, const TimeGrid& tg, int snapshot_stride = 1);

ScalarTrajectory simulate_logistic(Species which, const ModelSpec& spec,
                                   const Grid& grid, ScalarState init, double t_end,
                                   const TimeGrid& tg, int snapshot_stride = 1);

PairTrajectory simulate_reduced(const ModelSpec& spec, const Grid& grid,
                                const ScalarOrbit& host_orbit,
                                const ScalarOrbit& vector_orbit, PairState init,
                                double t_end, const TimeGrid& tg,
                                int snapshot_stride = 1);

Trajectory simulate_modified(const ModelSpec& spec, const Grid& grid, StateField init,
                             double t_end, const TimeGrid& tg, int snapshot_stride = 1);

// Zeroes Dirichlet boundary nodes of the affected components; returns true if
// anything changed (callers emit the compatibility warning).
bool project_dirichlet(const ModelSpec& spec, const Grid& grid, StateField& state);

// Upper bound max(sup of initial total, sup (a-b)/ inf c) + 1 used by the
// boundedness assertion.
double logistic_bound(const ModelSpec& spec, Species which, double init_sup);

double sup_norm(const std::vector<double>& v);
double sup_distance(const std::vector<double>& a, const std::vector<double>& b);
double sup_distance(const StateField& a, const StateField& b);
double sup_distance(const ScalarState& a, const ScalarState& b);
double sup_distance(const PairState& a, const PairState& b);
double min_value(const StateField& s);
double min_value(const ScalarState& s);
double min_value(const PairState& s);

}  // namespace vhrd

#endif
