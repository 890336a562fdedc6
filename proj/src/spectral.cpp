#include "vhrd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vhrd/errors.hpp"

namespace vhrd {

PeriodicLinearProblem::PeriodicLinearProblem(const Grid& grid, const TimeGrid& tg,
                                             std::vector<ComponentSpec> specs)
    : grid_(grid), tg_(tg) {
  const int steps = tg.steps_per_period;
  const double dt = tg.dt();
  comps_.resize(specs.size());
  int offset = 0;
  for (std::size_t c = 0; c < specs.size(); ++c) {
    ComponentSpec& in = specs[c];
    Component& comp = comps_[c];
    comp.dirichlet = in.bc->dirichlet();
    comp.node_offset = comp.dirichlet ? 1 : 0;
    comp.unknowns = comp.dirichlet ? grid.intervals - 1 : grid.intervals + 1;
    comp.offset = offset;
    offset += comp.unknowns;
    comp.coupling_source = in.coupling_source;
    if (static_cast<int>(in.decay.size()) != steps)
      throw ValidationError("decay table must carry one level per step");

    comp.factors.reserve(steps);
    for (int m = 0; m < steps; ++m) {
      const double t_m = (m + 1) * dt;
      std::vector<double> reaction(comp.unknowns);
      double min_r = 0.0;
      for (int k = 0; k < comp.unknowns; ++k) {
        reaction[k] = in.decay[m][k + comp.node_offset];
        min_r = std::min(min_r, reaction[k]);
      }
      if (1.0 + dt * min_r <= 0.0) {
        std::ostringstream os;
        os << "eigen step dt = " << dt << " exceeds the bound 1/" << -min_r
           << " set by the most negative decay";
        throw NumericsError(os.str());
      }
      TridiagonalOperator op = assemble_operator(grid, *in.diffusion, reaction, t_m, *in.bc);
      scale_shift_identity(op, dt);
      comp.factors.emplace_back(op);
    }

    if (!in.coupling.empty()) {
      if (static_cast<int>(in.coupling.size()) != steps)
        throw ValidationError("coupling table must carry one level per step");
      if (in.coupling_source < 0 || in.coupling_source >= static_cast<int>(specs.size()))
        throw ValidationError("coupling source out of range");
      comp.coupling.resize(steps);
      for (int m = 0; m < steps; ++m) {
        comp.coupling[m].resize(comp.unknowns);
        for (int k = 0; k < comp.unknowns; ++k) {
          double v = in.coupling[m][k + comp.node_offset];
          if (v < 0.0)
            throw ValidationError(
                "non-cooperative coupling: negative sample in the coupling field");
          comp.coupling[m][k] = v;
        }
      }
    }
  }
  total_unknowns_ = offset;
}

void PeriodicLinearProblem::step_level(const std::vector<double>& cur,
                                       std::vector<double>& next,
                                       std::vector<double>& scratch, double inv_mu,
                                       int m) const {
  const double dt = tg_.dt();
  // explicit coupling reads the pre-update values of every component
  for (const Component& comp : comps_) {
    double* out = next.data() + comp.offset;
    const double* self = cur.data() + comp.offset;
    for (int k = 0; k < comp.unknowns; ++k) out[k] = self[k];
    if (!comp.coupling.empty()) {
      const Component& src = comps_[comp.coupling_source];
      const std::vector<double>& kf = comp.coupling[m];
      for (int k = 0; k < comp.unknowns; ++k) {
        int node = k + comp.node_offset;
        int ks = node - src.node_offset;
        if (ks < 0 || ks >= src.unknowns) continue;  // source pinned to zero
        out[k] += dt * inv_mu * kf[k] * cur[src.offset + ks];
      }
    }
  }
  for (const Component& comp : comps_) {
    scratch.assign(next.begin() + comp.offset,
                   next.begin() + comp.offset + comp.unknowns);
    comp.factors[m].solve_in_place(scratch);
    std::copy(scratch.begin(), scratch.end(), next.begin() + comp.offset);
  }
}

std::vector<double> PeriodicLinearProblem::poincare_step(const std::vector<double>& v,
                                                         double mu) const {
  if (static_cast<int>(v.size()) != total_unknowns_)
    throw ValidationError("period-map input has the wrong size");
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  const double inv_mu = 1.0 / mu;
  const int steps = tg_.steps_per_period;

  std::vector<double> cur = v;
  std::vector<double> next(total_unknowns_);
  std::vector<double> scratch;
  for (int m = 0; m < steps; ++m) {
    step_level(cur, next, scratch, inv_mu, m);
    cur.swap(next);
  }
  return cur;
}

std::vector<double> PeriodicLinearProblem::advance_one_level(
    const std::vector<double>& v, double mu, int level) const {
  if (level < 0 || level >= tg_.steps_per_period)
    throw ValidationError("time level out of range");
  if (!(mu > 0.0)) throw ValidationError("mu must be positive");
  std::vector<double> next(total_unknowns_);
  std::vector<double> scratch;
  step_level(v, next, scratch, 1.0 / mu, level);
  return next;
}

std::vector<std::vector<double>> PeriodicLinearProblem::expand(
    const std::vector<double>& v) const {
  std::vector<std::vector<double>> fields(comps_.size());
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    const Component& comp = comps_[c];
    fields[c].assign(grid_.node_count(), 0.0);
    for (int k = 0; k < comp.unknowns; ++k)
      fields[c][k + comp.node_offset] = v[comp.offset + k];
  }
  return fields;
}

// ---------------------------------------------------------------------------
// Problem builders
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<double>> tabulate(const CoefficientField& f, const Grid& grid,
                                          const TimeGrid& tg) {
  const int steps = tg.steps_per_period;
  const double dt = tg.dt();
  std::vector<std::vector<double>> table(steps);
  for (int m = 0; m < steps; ++m) {
    const double t_m = (m + 1) * dt;
    table[m].resize(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) table[m][i] = f(grid.node(i), t_m);
  }
  return table;
}

void require_orbit_match(const ScalarOrbit& orbit, const Grid& grid, const TimeGrid& tg,
                         const char* name) {
  if (orbit.steps() != tg.steps_per_period)
    throw ValidationError(std::string(name) +
                          " orbit resolution differs from the eigen time grid");
  if (orbit.snaps.empty() ||
      static_cast<int>(orbit.snaps[0].u.size()) != grid.node_count())
    throw ValidationError(std::string(name) + " orbit does not match the grid");
}

void require_positive_orbit(const ScalarOrbit& orbit, bool dirichlet, const char* name) {
  const int n = static_cast<int>(orbit.snaps[0].u.size());
  int lo = dirichlet ? 1 : 0;
  int hi = dirichlet ? n - 1 : n;
  for (const ScalarState& s : orbit.snaps)
    for (int i = lo; i < hi; ++i)
      if (!(s.u[i] > 0.0))
        throw ValidationError(std::string(name) + " orbit is not positive");
}

}  // namespace

PeriodicLinearProblem build_scalar_eigenproblem(const ModelSpec& spec, const Grid& grid,
                                                const TimeGrid& tg, Species which) {
  const CoefficientSet& c = spec.coeffs;
  const CoefficientField& a = which == Species::host ? c.a1 : c.a2;
  const CoefficientField& b = which == Species::host ? c.b1 : c.b2;
  PeriodicLinearProblem::ComponentSpec comp;
  comp.diffusion = which == Species::host ? &c.d1 : &c.d2;
  comp.bc = which == Species::host ? &spec.bc_host : &spec.bc_vector;
  comp.decay = tabulate(
      CoefficientField([&](double x, double t) { return b(x, t) - a(x, t); },
                       spec.period),
      grid, tg);
  return PeriodicLinearProblem(grid, tg, {std::move(comp)});
}

PeriodicLinearProblem build_scalar_renewal_problem(const ModelSpec& spec,
                                                   const Grid& grid, const TimeGrid& tg,
                                                   Species which) {
  const CoefficientSet& c = spec.coeffs;
  PeriodicLinearProblem::ComponentSpec comp;
  comp.diffusion = which == Species::host ? &c.d1 : &c.d2;
  comp.bc = which == Species::host ? &spec.bc_host : &spec.bc_vector;
  comp.decay = tabulate(which == Species::host ? c.b1 : c.b2, grid, tg);
  comp.coupling = tabulate(which == Species::host ? c.a1 : c.a2, grid, tg);
  comp.coupling_source = 0;
  return PeriodicLinearProblem(grid, tg, {std::move(comp)});
}

PeriodicLinearProblem build_coupled_problem(const ModelSpec& spec, const Grid& grid,
                                            const TimeGrid& tg,
                                            const ScalarOrbit& host_orbit,
                                            const ScalarOrbit& vector_orbit) {
  require_orbit_match(host_orbit, grid, tg, "host");
  require_orbit_match(vector_orbit, grid, tg, "vector");
  require_positive_orbit(host_orbit, spec.bc_host.dirichlet(), "host");
  require_positive_orbit(vector_orbit, spec.bc_vector.dirichlet(), "vector");

  const CoefficientSet& c = spec.coeffs;
  const int steps = tg.steps_per_period;
  const double dt = tg.dt();
  const int n = grid.node_count();

  PeriodicLinearProblem::ComponentSpec host, vect;
  host.diffusion = &c.d1;
  host.bc = &spec.bc_host;
  host.coupling_source = 1;
  vect.diffusion = &c.d2;
  vect.bc = &spec.bc_vector;
  vect.coupling_source = 0;
  host.decay.resize(steps);
  host.coupling.resize(steps);
  vect.decay.resize(steps);
  vect.coupling.resize(steps);
  for (int m = 0; m < steps; ++m) {
    const double t_m = (m + 1) * dt;
    const std::vector<double>& h_lag = host_orbit.snaps[m].u;
    const std::vector<double>& h_cur = host_orbit.snaps[m + 1].u;
    const std::vector<double>& v_lag = vector_orbit.snaps[m].u;
    const std::vector<double>& v_cur = vector_orbit.snaps[m + 1].u;
    host.decay[m].resize(n);
    host.coupling[m].resize(n);
    vect.decay[m].resize(n);
    vect.coupling[m].resize(n);
    for (int i = 0; i < n; ++i) {
      double x = grid.node(i);
      host.decay[m][i] = c.b1(x, t_m) + c.c1(x, t_m) * h_lag[i];
      host.coupling[m][i] = c.l1(x, t_m) * h_cur[i];
      vect.decay[m][i] = c.b2(x, t_m) + c.c2(x, t_m) * v_lag[i];
      vect.coupling[m][i] = c.l2(x, t_m) * v_cur[i];
    }
  }
  return PeriodicLinearProblem(grid, tg, {std::move(host), std::move(vect)});
}

// ---------------------------------------------------------------------------
// Power iteration and reproduction-number roots
// ---------------------------------------------------------------------------

SpectralResult principal_eigenvalue(const PeriodicLinearProblem& problem, double mu,
                                    const SpectralOptions& opts,
                                    const std::vector<double>* start) {
  const int n = problem.unknowns();
  std::vector<double> v = start ? *start : std::vector<double>(n, 1.0);
  if (static_cast<int>(v.size()) != n)
    throw ValidationError("start vector has the wrong size");
  double norm = sup_norm(v);
  if (!(norm > 0.0)) throw ValidationError("start vector must be nonzero");
  for (double& x : v) x /= norm;

  double radius = 0.0;
  double prev_radius = -1.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> w;
  while (iterations < opts.power.max_iterations) {
    w = problem.poincare_step(v, mu);
    ++iterations;
    radius = sup_norm(w);
    if (!(radius > 0.0))
      throw NonConvergenceError("power iteration (period map annihilated the field)",
                                0.0, iterations);
    double move = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      move = std::max(move, std::abs(w[i] / radius - v[i]));
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / radius;
    if (std::abs(radius - prev_radius) < opts.power.radius_tol * std::max(1.0, radius) &&
        move < opts.power.field_tol) {
      converged = true;
      break;
    }
    prev_radius = radius;
  }
  if (!converged)
    throw NonConvergenceError("period-map power iteration",
                              std::abs(radius - prev_radius), iterations);

  SpectralResult result;
  result.period_map_radius = radius;
  result.eigenvalue = -std::log(radius) / problem.time_grid().period;
  result.iterations = iterations;
  result.converged = true;
  w = problem.poincare_step(v, mu);
  double res = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    res = std::max(res, std::abs(w[i] - radius * v[i]));
  result.residual = res;
  result.eigenvector = v;

  if (opts.keep_eigenfunction) {
    // one more period, level by level, then sup-normalize globally
    const TimeGrid& tg = problem.time_grid();
    result.eigenfunction.reserve(tg.steps_per_period + 1);
    result.eigenfunction.push_back(problem.expand(v));
    std::vector<double> cur = v;
    for (int m = 0; m < tg.steps_per_period; ++m) {
      cur = problem.advance_one_level(cur, mu, m);
      result.eigenfunction.push_back(problem.expand(cur));
    }
    double sup = 0.0;
    for (const auto& level : result.eigenfunction)
      for (const auto& comp : level) sup = std::max(sup, sup_norm(comp));
    if (sup > 0.0)
      for (auto& level : result.eigenfunction)
        for (auto& comp : level)
          for (double& x : comp) x /= sup;
  }
  return result;
}

SpectralResult principal_eigenvalue_scalar(const ModelSpec& spec, const Grid& grid,
                                           const TimeGrid& tg, Species which,
                                           const SpectralOptions& opts) {
  PeriodicLinearProblem problem = build_scalar_eigenproblem(spec, grid, tg, which);
  return principal_eigenvalue(problem, 1.0, opts);
}

SpectralResult principal_eigenvalue_coupled(const ModelSpec& spec, const Grid& grid,
                                            const TimeGrid& tg,
                                            const ScalarOrbit& host_orbit,
                                            const ScalarOrbit& vector_orbit, double mu,
                                            const SpectralOptions& opts) {
  PeriodicLinearProblem problem =
      build_coupled_problem(spec, grid, tg, host_orbit, vector_orbit);
  return principal_eigenvalue(problem, mu, opts);
}

namespace {

constexpr double kBracketFloor = 1e-6;
constexpr double kBracketCeiling = 1e6;

R0Result root_of_mu_family(const PeriodicLinearProblem& problem,
                           const SpectralOptions& opts) {
  SpectralOptions inner = opts;
  inner.keep_eigenfunction = false;

  int evaluations = 0;
  std::vector<double> warm(problem.unknowns(), 1.0);
  auto lambda_at = [&](double mu) {
    SpectralResult r = principal_eigenvalue(problem, mu, inner, &warm);
    warm = r.eigenvector;
    ++evaluations;
    return r.eigenvalue;
  };

  double lambda_one = lambda_at(1.0);

  double lo = 0.5, hi = 2.0;
  double f_lo = lambda_at(lo);
  while (f_lo > 0.0) {
    lo *= 0.25;
    if (lo < kBracketFloor)
      throw BracketError("no sign change down to mu = 1e-6");
    f_lo = lambda_at(lo);
  }
  double f_hi = lambda_at(hi);
  while (f_hi < 0.0) {
    hi *= 4.0;
    if (hi > kBracketCeiling)
      throw BracketError("no sign change up to mu = 1e6");
    f_hi = lambda_at(hi);
  }

  while (hi - lo > opts.mu_rel_tol * lo) {
    double mid = std::sqrt(lo * hi);
    if (lambda_at(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }

  R0Result result;
  result.value = std::sqrt(lo * hi);
  result.lambda_at_one = lambda_one;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.evaluations = evaluations;
  bool sign_match = (result.value > 1.0) == (lambda_one < 0.0);
  result.sign_consistent = sign_match || std::abs(result.value - 1.0) < 1e-5;
  return result;
}

}  // namespace

R0Result basic_reproduction_scalar(const ModelSpec& spec, const Grid& grid,
                                   const TimeGrid& tg, Species which,
                                   const SpectralOptions& opts) {
  const CoefficientField& b =
      which == Species::host ? spec.coeffs.b1 : spec.coeffs.b2;
  bool nontrivial = false;
  for (int i = 0; i <= 20 && !nontrivial; ++i)
    for (int j = 0; j < 16 && !nontrivial; ++j)
      if (b(spec.length * i / 20.0, spec.period * j / 16.0) > 0.0) nontrivial = true;
  if (!nontrivial)
    throw ValidationError(
        "reproduction number needs a death rate that is positive somewhere");
  PeriodicLinearProblem problem = build_scalar_renewal_problem(spec, grid, tg, which);
  return root_of_mu_family(problem, opts);
}

R0Result basic_reproduction_coupled(const ModelSpec& spec, const Grid& grid,
                                    const TimeGrid& tg, const ScalarOrbit& host_orbit,
                                    const ScalarOrbit& vector_orbit,
                                    const SpectralOptions& opts) {
  PeriodicLinearProblem problem =
      build_coupled_problem(spec, grid, tg, host_orbit, vector_orbit);
  return root_of_mu_family(problem, opts);
}

}  // namespace vhrd
