#include "vhrd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vhrd/errors.hpp"

namespace vhrd {

TimeGrid make_time_grid(double period, double dt) {
  if (!(period > 0.0)) throw NumericsError("period must be positive");
  if (!(dt > 0.0)) throw NumericsError("dt must be positive");
  double ratio = period / dt;
  int steps = static_cast<int>(std::llround(ratio));
  if (steps < 1 || std::abs(steps * dt - period) > 1e-12 * std::max(1.0, period)) {
    std::ostringstream os;
    os << "dt = " << dt << " does not divide the period " << period;
    throw NumericsError(os.str());
  }
  return TimeGrid{period, steps};
}

StateField StateField::constant(const Grid& grid, double hu0, double hi0, double vu0,
                                double vi0) {
  int n = grid.node_count();
  StateField s;
  s.hu.assign(n, hu0);
  s.hi.assign(n, hi0);
  s.vu.assign(n, vu0);
  s.vi.assign(n, vi0);
  s.t = 0.0;
  return s;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double sup_distance(const StateField& a, const StateField& b) {
  return std::max(std::max(sup_distance(a.hu, b.hu), sup_distance(a.hi, b.hi)),
                  std::max(sup_distance(a.vu, b.vu), sup_distance(a.vi, b.vi)));
}

double sup_distance(const ScalarState& a, const ScalarState& b) {
  return sup_distance(a.u, b.u);
}

double sup_distance(const PairState& a, const PairState& b) {
  return std::max(sup_distance(a.hi, b.hi), sup_distance(a.vi, b.vi));
}

namespace {

double min_of(const std::vector<double>& v) {
  double m = v.empty() ? 0.0 : v[0];
  for (double x : v) m = std::min(m, x);
  return m;
}

}  // namespace

double min_value(const StateField& s) {
  return std::min(std::min(min_of(s.hu), min_of(s.hi)),
                  std::min(min_of(s.vu), min_of(s.vi)));
}

double min_value(const ScalarState& s) { return min_of(s.u); }

double min_value(const PairState& s) {
  return std::min(min_of(s.hi), min_of(s.vi));
}

namespace {

constexpr double kPositivityFloor = -1e-12;
constexpr double kIncidenceFloor = 1e-12;

void sample_nodes(const Grid& grid, std::vector<double>& x) {
  x.resize(grid.node_count());
  for (int i = 0; i < grid.node_count(); ++i) x[i] = grid.node(i);
}

void eval_field(const CoefficientField& f, const std::vector<double>& x, double t,
                std::vector<double>& out) {
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i], t);
}

// Solves (I + dt*(A + diag(reaction))) u = rhs for one component, with the
// arrays given on all grid nodes; Dirichlet boundary nodes stay zero.
std::vector<double> implicit_component_step(const Grid& grid, const CoefficientField& d,
                                            const BoundaryCondition& bc,
                                            const std::vector<double>& reaction,
                                            double t_next, double dt,
                                            const std::vector<double>& rhs) {
  const int nodes = grid.node_count();
  const bool dir = bc.dirichlet();
  const int n = dir ? nodes - 2 : nodes;
  const int offset = dir ? 1 : 0;

  std::vector<double> r(n), b(n);
  double min_r = 0.0;
  for (int k = 0; k < n; ++k) {
    r[k] = reaction[k + offset];
    b[k] = rhs[k + offset];
    min_r = std::min(min_r, r[k]);
  }
  if (1.0 + dt * min_r <= 0.0) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the diagonal-dominance bound 1/"
       << -min_r << " for the implicit step";
    throw NumericsError(os.str());
  }

  TridiagonalOperator op = assemble_operator(grid, d, r, t_next, bc);
  scale_shift_identity(op, dt);
  std::vector<double> u = tridiagonal_solve(op, b);

  if (!dir) return u;
  std::vector<double> full(nodes, 0.0);
  for (int k = 0; k < n; ++k) full[k + 1] = u[k];
  return full;
}

void check_positivity(const std::vector<double>& v, const char* component,
                      double time) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < kPositivityFloor)
      throw PositivityError(component, static_cast<int>(i), time, v[i]);
  }
}

double field_max(const ModelSpec& spec, const CoefficientField& f) {
  double m = -1e300;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j < 32; ++j)
      m = std::max(m, f(spec.length * i / 40.0, spec.period * j / 32.0));
  return m;
}

double field_min(const ModelSpec& spec, const CoefficientField& f) {
  double m = 1e300;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j < 32; ++j)
      m = std::min(m, f(spec.length * i / 40.0, spec.period * j / 32.0));
  return m;
}

double total_sup(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, a[i] + b[i]);
  return m;
}

void check_bound(double value, double cap, const char* what, double time) {
  if (value > cap) {
    std::ostringstream os;
    os << "boundedness violated: " << what << " reached " << value << " > cap "
       << cap << " at t = " << time;
    throw Error(os.str());
  }
}

}  // namespace

double logistic_bound(const ModelSpec& spec, Species which, double init_sup) {
  const CoefficientSet& c = spec.coeffs;
  double growth = which == Species::host
                      ? field_max(spec, CoefficientField(
                                            [&c](double x, double t) {
                                              return c.a1(x, t) - c.b1(x, t);
                                            },
                                            spec.period))
                      : field_max(spec, CoefficientField(
                                            [&c](double x, double t) {
                                              return c.a2(x, t) - c.b2(x, t);
                                            },
                                            spec.period));
  double crowd = which == Species::host ? field_min(spec, c.c1) : field_min(spec, c.c2);
  double carrying = growth > 0.0 && crowd > 0.0 ? growth / crowd : 0.0;
  return std::max(init_sup, carrying) + 1.0;
}

// ---------------------------------------------------------------------------
// FullSystem
// ---------------------------------------------------------------------------

FullSystem::FullSystem(const ModelSpec& spec, const Grid& grid)
    : spec_(&spec), grid_(grid) {}

void FullSystem::step(StateField& s, double dt) const {
  const CoefficientSet& c = spec_->coeffs;
  const int n = grid_.node_count();
  const double t1 = s.t + dt;

  std::vector<double> x;
  sample_nodes(grid_, x);
  std::vector<double> a1, b1, c1, l1, a2, b2, c2, l2;
  eval_field(c.a1, x, t1, a1);
  eval_field(c.b1, x, t1, b1);
  eval_field(c.c1, x, t1, c1);
  eval_field(c.l1, x, t1, l1);
  eval_field(c.a2, x, t1, a2);
  eval_field(c.b2, x, t1, b2);
  eval_field(c.c2, x, t1, c2);
  eval_field(c.l2, x, t1, l2);

  std::vector<double> reaction(n), rhs(n), total(n);

  // susceptible hosts: sinks b1 + c1*H + l1*Vi, source a1*H
  for (int i = 0; i < n; ++i) {
    total[i] = s.hu[i] + s.hi[i];
    reaction[i] = b1[i] + c1[i] * total[i] + l1[i] * s.vi[i];
    rhs[i] = s.hu[i] + dt * a1[i] * total[i];
  }
  std::vector<double> hu =
      implicit_component_step(grid_, c.d1, spec_->bc_host, reaction, t1, dt, rhs);

  // infected hosts: the transfer drained from H_u feeds H_i with the same
  // discrete value dt*l1*Vi^n*Hu^{n+1}
  for (int i = 0; i < n; ++i) {
    reaction[i] = b1[i] + c1[i] * total[i];
    rhs[i] = s.hi[i] + dt * l1[i] * s.vi[i] * hu[i];
  }
  std::vector<double> hi =
      implicit_component_step(grid_, c.d1, spec_->bc_host, reaction, t1, dt, rhs);

  // susceptible vectors
  for (int i = 0; i < n; ++i) {
    total[i] = s.vu[i] + s.vi[i];
    reaction[i] = b2[i] + c2[i] * total[i] + l2[i] * s.hi[i];
    rhs[i] = s.vu[i] + dt * a2[i] * total[i];
  }
  std::vector<double> vu =
      implicit_component_step(grid_, c.d2, spec_->bc_vector, reaction, t1, dt, rhs);

  // infected vectors
  for (int i = 0; i < n; ++i) {
    reaction[i] = b2[i] + c2[i] * total[i];
    rhs[i] = s.vi[i] + dt * l2[i] * s.hi[i] * vu[i];
  }
  std::vector<double> vi =
      implicit_component_step(grid_, c.d2, spec_->bc_vector, reaction, t1, dt, rhs);

  check_positivity(hu, "H_u", t1);
  check_positivity(hi, "H_i", t1);
  check_positivity(vu, "V_u", t1);
  check_positivity(vi, "V_i", t1);

  s.hu = std::move(hu);
  s.hi = std::move(hi);
  s.vu = std::move(vu);
  s.vi = std::move(vi);
  s.t = t1;
}

// ---------------------------------------------------------------------------
// LogisticSystem
// ---------------------------------------------------------------------------

LogisticSystem::LogisticSystem(const ModelSpec& spec, const Grid& grid, Species which)
    : spec_(&spec), grid_(grid), which_(which) {}

const BoundaryCondition& LogisticSystem::bc() const {
  return which_ == Species::host ? spec_->bc_host : spec_->bc_vector;
}

void LogisticSystem::step(ScalarState& s, double dt) const {
  const CoefficientSet& cs = spec_->coeffs;
  const CoefficientField& d = which_ == Species::host ? cs.d1 : cs.d2;
  const CoefficientField& a = which_ == Species::host ? cs.a1 : cs.a2;
  const CoefficientField& b = which_ == Species::host ? cs.b1 : cs.b2;
  const CoefficientField& cc = which_ == Species::host ? cs.c1 : cs.c2;
  const int n = grid_.node_count();
  const double t1 = s.t + dt;

  std::vector<double> x;
  sample_nodes(grid_, x);
  std::vector<double> av, bv, cv;
  eval_field(a, x, t1, av);
  eval_field(b, x, t1, bv);
  eval_field(cc, x, t1, cv);

  std::vector<double> reaction(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    reaction[i] = bv[i] + cv[i] * s.u[i];
    rhs[i] = s.u[i] + dt * av[i] * s.u[i];
  }
  std::vector<double> u = implicit_component_step(grid_, d, bc(), reaction, t1, dt, rhs);
  check_positivity(u, which_ == Species::host ? "H" : "V", t1);
  s.u = std::move(u);
  s.t = t1;
}

// ---------------------------------------------------------------------------
// ReducedSystem
// ---------------------------------------------------------------------------

ReducedSystem::ReducedSystem(const ModelSpec& spec, const Grid& grid,
                             const ScalarOrbit& host_orbit,
                             const ScalarOrbit& vector_orbit)
    : spec_(&spec), grid_(grid), host_orbit_(&host_orbit),
      vector_orbit_(&vector_orbit) {
  for (const ScalarOrbit* orbit : {host_orbit_, vector_orbit_}) {
    if (orbit->snaps.empty() ||
        static_cast<int>(orbit->snaps[0].u.size()) != grid.node_count())
      throw ValidationError("orbit does not match the reduced run's grid");
  }
  if (host_orbit_->steps() != vector_orbit_->steps())
    throw ValidationError("host and vector orbits use different step counts");
}

void ReducedSystem::step(PairState& s, double dt) const {
  const CoefficientSet& c = spec_->coeffs;
  const int n = grid_.node_count();
  const int steps = host_orbit_->steps();
  if (std::abs(dt - host_orbit_->dt) > 1e-12 * dt)
    throw ValidationError("reduced step size differs from the driving orbits'");
  const double t1 = s.t + dt;
  // position within the period; orbit index m holds the lagged totals
  int m = static_cast<int>(std::llround(s.t / dt)) % steps;
  if (m < 0) m += steps;
  const std::vector<double>& h_old = host_orbit_->snaps[m].u;
  const std::vector<double>& h_new = host_orbit_->snaps[m + 1].u;
  const std::vector<double>& v_old = vector_orbit_->snaps[m].u;
  const std::vector<double>& v_new = vector_orbit_->snaps[m + 1].u;

  std::vector<double> x;
  sample_nodes(grid_, x);
  std::vector<double> b1, c1, l1, b2, c2, l2;
  eval_field(c.b1, x, t1, b1);
  eval_field(c.c1, x, t1, c1);
  eval_field(c.l1, x, t1, l1);
  eval_field(c.b2, x, t1, b2);
  eval_field(c.c2, x, t1, c2);
  eval_field(c.l2, x, t1, l2);

  std::vector<double> reaction(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    reaction[i] = b1[i] + c1[i] * h_old[i] + l1[i] * s.vi[i];
    rhs[i] = s.hi[i] + dt * l1[i] * h_new[i] * s.vi[i];
  }
  std::vector<double> hi =
      implicit_component_step(grid_, c.d1, spec_->bc_host, reaction, t1, dt, rhs);

  for (int i = 0; i < n; ++i) {
    reaction[i] = b2[i] + c2[i] * v_old[i] + l2[i] * s.hi[i];
    rhs[i] = s.vi[i] + dt * l2[i] * v_new[i] * s.hi[i];
  }
  std::vector<double> vi =
      implicit_component_step(grid_, c.d2, spec_->bc_vector, reaction, t1, dt, rhs);

  check_positivity(hi, "H_i", t1);
  check_positivity(vi, "V_i", t1);
  s.hi = std::move(hi);
  s.vi = std::move(vi);
  s.t = t1;
}

// ---------------------------------------------------------------------------
// ModifiedSystem
// ---------------------------------------------------------------------------

ModifiedSystem::ModifiedSystem(const ModelSpec& spec, const Grid& grid)
    : spec_(&spec), grid_(grid) {
  if (spec.bc_host.dirichlet() || spec.bc_vector.dirichlet())
    throw UnsupportedError(
        "the standard-incidence model supports only alpha = 1 boundaries");
}

void ModifiedSystem::step(StateField& s, double dt) const {
  const CoefficientSet& c = spec_->coeffs;
  const int n = grid_.node_count();
  const double t1 = s.t + dt;

  std::vector<double> x;
  sample_nodes(grid_, x);
  std::vector<double> a1, b1, c1, l1, a2, b2, c2, l2, g;
  eval_field(c.a1, x, t1, a1);
  eval_field(c.b1, x, t1, b1);
  eval_field(c.c1, x, t1, c1);
  eval_field(c.l1, x, t1, l1);
  eval_field(c.a2, x, t1, a2);
  eval_field(c.b2, x, t1, b2);
  eval_field(c.c2, x, t1, c2);
  eval_field(c.l2, x, t1, l2);
  if (c.gamma)
    eval_field(*c.gamma, x, t1, g);
  else
    g.assign(n, 0.0);

  std::vector<double> host_total(n), vec_total(n), denom(n);
  for (int i = 0; i < n; ++i) {
    host_total[i] = s.hu[i] + s.hi[i];
    vec_total[i] = s.vu[i] + s.vi[i];
    denom[i] = std::max(host_total[i], kIncidenceFloor);
  }

  std::vector<double> reaction(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    reaction[i] = b1[i] + c1[i] * host_total[i] + l1[i] * s.vi[i] / denom[i];
    rhs[i] = s.hu[i] + dt * a1[i] * host_total[i] + dt * g[i] * s.hi[i];
  }
  std::vector<double> hu =
      implicit_component_step(grid_, c.d1, spec_->bc_host, reaction, t1, dt, rhs);

  for (int i = 0; i < n; ++i) {
    reaction[i] = b1[i] + c1[i] * host_total[i] + g[i];
    rhs[i] = s.hi[i] + dt * l1[i] * s.vi[i] * hu[i] / denom[i];
  }
  std::vector<double> hi =
      implicit_component_step(grid_, c.d1, spec_->bc_host, reaction, t1, dt, rhs);

  for (int i = 0; i < n; ++i) {
    reaction[i] = b2[i] + c2[i] * vec_total[i] + l2[i] * s.hi[i] / denom[i];
    rhs[i] = s.vu[i] + dt * a2[i] * vec_total[i];
  }
  std::vector<double> vu =
      implicit_component_step(grid_, c.d2, spec_->bc_vector, reaction, t1, dt, rhs);

  for (int i = 0; i < n; ++i) {
    reaction[i] = b2[i] + c2[i] * vec_total[i];
    rhs[i] = s.vi[i] + dt * l2[i] * s.hi[i] * vu[i] / denom[i];
  }
  std::vector<double> vi =
      implicit_component_step(grid_, c.d2, spec_->bc_vector, reaction, t1, dt, rhs);

  check_positivity(hu, "H_u", t1);
  check_positivity(hi, "H_i", t1);
  check_positivity(vu, "V_u", t1);
  check_positivity(vi, "V_i", t1);
  s.hu = std::move(hu);
  s.hi = std::move(hi);
  s.vu = std::move(vu);
  s.vi = std::move(vi);
  s.t = t1;
}

// ---------------------------------------------------------------------------
// Simulation drivers
// ---------------------------------------------------------------------------

namespace {

int run_steps(double t_end, double dt) {
  if (!(t_end > 0.0)) throw NumericsError("t_end must be positive");
  int steps = static_cast<int>(std::llround(t_end / dt));
  if (steps < 1 || std::abs(steps * dt - t_end) > 1e-9 * std::max(1.0, t_end))
    throw NumericsError("t_end must be a whole number of steps");
  return steps;
}

}  // namespace

bool project_dirichlet(const ModelSpec& spec, const Grid& grid, StateField& state) {
  bool changed = false;
  int last = grid.node_count() - 1;
  auto pin = [&](std::vector<double>& v) {
    if (v[0] != 0.0 || v[last] != 0.0) changed = true;
    v[0] = 0.0;
    v[last] = 0.0;
  };
  if (spec.bc_host.dirichlet()) {
    pin(state.hu);
    pin(state.hi);
  }
  if (spec.bc_vector.dirichlet()) {
    pin(state.vu);
    pin(state.vi);
  }
  return changed;
}

Trajectory simulate_full(const ModelSpec& spec, const Grid& grid, StateField init,
                         double t_end, const TimeGrid& tg, int snapshot_stride) {
  const double dt = tg.dt();
  const int steps = run_steps(t_end, dt);
  if (project_dirichlet(spec, grid, init))
    std::fprintf(stderr,
                 "warning: initial data projected to zero at Dirichlet boundary "
                 "nodes\n");

  FullSystem system(spec, grid);
  double host_cap = logistic_bound(spec, Species::host, total_sup(init.hu, init.hi));
  double vec_cap = logistic_bound(spec, Species::vector, total_sup(init.vu, init.vi));

  Trajectory traj;
  traj.dt = dt;
  traj.stride = snapshot_stride;
  traj.snapshots.push_back(init);
  StateField s = std::move(init);
  for (int k = 1; k <= steps; ++k) {
    system.step(s, dt);
    check_bound(total_sup(s.hu, s.hi), host_cap, "host total", s.t);
    check_bound(total_sup(s.vu, s.vi), vec_cap, "vector total", s.t);
    if (k % snapshot_stride == 0 || k == steps) traj.snapshots.push_back(s);
  }
  return traj;
}

ScalarTrajectory simulate_logistic(Species which, const ModelSpec& spec,
                                   const Grid& grid, ScalarState init, double t_end,
                                   const TimeGrid& tg, int snapshot_stride) {
  const double dt = tg.dt();
  const int steps = run_steps(t_end, dt);
  const BoundaryCondition& bc =
      which == Species::host ? spec.bc_host : spec.bc_vector;
  if (bc.dirichlet()) {
    init.u.front() = 0.0;
    init.u.back() = 0.0;
  }
  LogisticSystem system(spec, grid, which);
  double cap = logistic_bound(spec, which, sup_norm(init.u));

  ScalarTrajectory traj;
  traj.dt = dt;
  traj.stride = snapshot_stride;
  traj.snapshots.push_back(init);
  ScalarState s = std::move(init);
  for (int k = 1; k <= steps; ++k) {
    system.step(s, dt);
    check_bound(sup_norm(s.u), cap, which == Species::host ? "host total" : "vector total",
                s.t);
    if (k % snapshot_stride == 0 || k == steps) traj.snapshots.push_back(s);
  }
  return traj;
}

PairTrajectory simulate_reduced(const ModelSpec& spec, const Grid& grid,
                                const ScalarOrbit& host_orbit,
                                const ScalarOrbit& vector_orbit, PairState init,
                                double t_end, const TimeGrid& tg, int snapshot_stride) {
  const double dt = tg.dt();
  const int steps = run_steps(t_end, dt);
  ReducedSystem system(spec, grid, host_orbit, vector_orbit);
  for (std::size_t i = 0; i < init.hi.size(); ++i) {
    if (init.hi[i] > host_orbit.snaps[0].u[i] || init.vi[i] > vector_orbit.snaps[0].u[i])
      throw ValidationError(
          "reduced initial data exceeds the driving totals at node " +
          std::to_string(i));
  }

  PairTrajectory traj;
  traj.dt = dt;
  traj.stride = snapshot_stride;
  traj.snapshots.push_back(init);
  PairState s = std::move(init);
  for (int k = 1; k <= steps; ++k) {
    system.step(s, dt);
    if (k % snapshot_stride == 0 || k == steps) traj.snapshots.push_back(s);
  }
  return traj;
}

Trajectory simulate_modified(const ModelSpec& spec, const Grid& grid, StateField init,
                             double t_end, const TimeGrid& tg, int snapshot_stride) {
  const double dt = tg.dt();
  const int steps = run_steps(t_end, dt);
  ModifiedSystem system(spec, grid);
  double host_cap = logistic_bound(spec, Species::host, total_sup(init.hu, init.hi));
  double vec_cap = logistic_bound(spec, Species::vector, total_sup(init.vu, init.vi));

  Trajectory traj;
  traj.dt = dt;
  traj.stride = snapshot_stride;
  traj.snapshots.push_back(init);
  StateField s = std::move(init);
  for (int k = 1; k <= steps; ++k) {
    system.step(s, dt);
    check_bound(total_sup(s.hu, s.hi), host_cap, "host total", s.t);
    check_bound(total_sup(s.vu, s.vi), vec_cap, "vector total", s.t);
    if (k % snapshot_stride == 0 || k == steps) traj.snapshots.push_back(s);
  }
  return traj;
}

}  // namespace vhrd
