#ifndef VHRD_SPECTRAL_HPP
#define VHRD_SPECTRAL_HPP

#include <optional>
#include <vector>

#include "vhrd/periodic.hpp"
#include "vhrd/solver.hpp"

namespace vhrd {

// Linear T-periodic cooperative problem, tabulated and pre-factored on the
// time grid: per level m (time t_m = m*dt) each component carries the
// factorization of (I + dt*(A(t_m) + diag(decay_m))) and an optional
// nonnegative explicit coupling array. Decay fields that depend on the
// nonlinear totals use the lagged snapshot (level m-1), couplings the current
// one (level m), mirroring the nonlinear scheme's linearization at zero.
class PeriodicLinearProblem {
 public:
  struct ComponentSpec {
    const CoefficientField* diffusion;
    const BoundaryCondition* bc;
    // decay(level, node) on all grid nodes, level index 1..steps
    std::vector<std::vector<double>> decay;
    // coupling(level, node); empty when the component has no explicit term
    std::vector<std::vector<double>> coupling;
    int coupling_source = -1;  // component the explicit term reads from
  };

  PeriodicLinearProblem(const Grid& grid, const TimeGrid& tg,
                        std::vector<ComponentSpec> components);

  // Poincare (period) map: advances the stacked unknown vector over one full
  // period; the explicit couplings are scaled by 1/mu.
  std::vector<double> poincare_step(const std::vector<double>& v, double mu) const;

  // One time level (index 0..steps-1) of the period map.
  std::vector<double> advance_one_level(const std::vector<double>& v, double mu,
                                        int level) const;

  int component_count() const { return static_cast<int>(comps_.size()); }
  int unknowns() const { return total_unknowns_; }
  int component_unknowns(int c) const { return comps_[c].unknowns; }
  bool component_dirichlet(int c) const { return comps_[c].dirichlet; }
  const Grid& grid() const { return grid_; }
  const TimeGrid& time_grid() const { return tg_; }

  // Expands a stacked unknown vector into per-component nodal fields,
  // reinstating zero Dirichlet boundary values.
  std::vector<std::vector<double>> expand(const std::vector<double>& v) const;

 private:
  struct Component {
    std::vector<TridiagonalFactor> factors;        // per level 1..steps
    std::vector<std::vector<double>> coupling;     // per level, on unknowns
    int coupling_source = -1;
    bool dirichlet = false;
    int unknowns = 0;
    int offset = 0;       // position in the stacked vector
    int node_offset = 0;  // grid node of unknown 0
  };

  void step_level(const std::vector<double>& cur, std::vector<double>& next,
                  std::vector<double>& scratch, double inv_mu, int level) const;

  Grid grid_;
  TimeGrid tg_;
  std::vector<Component> comps_;
  int total_unknowns_ = 0;
};

PeriodicLinearProblem build_scalar_eigenproblem(const ModelSpec& spec, const Grid& grid,
                                                const TimeGrid& tg, Species which);

// mu-parametrized renewal family for the scalar reproduction number:
// death implicit, birth/mu explicit.
PeriodicLinearProblem build_scalar_renewal_problem(const ModelSpec& spec,
                                                   const Grid& grid, const TimeGrid& tg,
                                                   Species which);

// Two-component linearization at zero infection around the periodic totals;
// decays b1 + c1*H, b2 + c2*V, couplings l1*H/mu and l2*V/mu.
PeriodicLinearProblem build_coupled_problem(const ModelSpec& spec, const Grid& grid,
                                            const TimeGrid& tg,
                                            const ScalarOrbit& host_orbit,
                                            const ScalarOrbit& vector_orbit);

struct PowerOptions {
  double radius_tol = 1e-10;
  double field_tol = 1e-8;
  int max_iterations = 10000;
};

struct SpectralOptions {
  PowerOptions power;
  bool keep_eigenfunction = false;
  double mu_rel_tol = 1e-6;
};

struct SpectralResult {
  double eigenvalue = 0.0;           // -ln(radius)/T
  double period_map_radius = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // ||P v - r v||_inf with ||v||_inf = 1
  // eigenfunction[level][component][node] over one period, sup-normalized;
  // filled only when requested
  std::vector<std::vector<std::vector<double>>> eigenfunction;
  std::vector<double> eigenvector;  // stacked unknowns at level 0, sup-norm 1
};

// Power iteration on the period map; start defaults to all ones.
SpectralResult principal_eigenvalue(const PeriodicLinearProblem& problem, double mu,
                                    const SpectralOptions& opts = {},
                                    const std::vector<double>* start = nullptr);

SpectralResult principal_eigenvalue_scalar(const ModelSpec& spec, const Grid& grid,
                                           const TimeGrid& tg, Species which,
                                           const SpectralOptions& opts = {});

SpectralResult principal_eigenvalue_coupled(const ModelSpec& spec, const Grid& grid,
                                            const TimeGrid& tg,
                                            const ScalarOrbit& host_orbit,
                                            const ScalarOrbit& vector_orbit, double mu,
                                            const SpectralOptions& opts = {});

struct R0Result {
  double value = 0.0;
  double lambda_at_one = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int evaluations = 0;
  bool sign_consistent = true;
};

// Unique mu > 0 where the mu-scaled family's principal eigenvalue vanishes;
// geometric bracket expansion capped at [1e-6, 1e6], then log-space bisection
// to relative tolerance opts.mu_rel_tol.
R0Result basic_reproduction_scalar(const ModelSpec& spec, const Grid& grid,
                                   const TimeGrid& tg, Species which,
                                   const SpectralOptions& opts = {});

R0Result basic_reproduction_coupled(const ModelSpec& spec, const Grid& grid,
                                    const TimeGrid& tg, const ScalarOrbit& host_orbit,
                                    const ScalarOrbit& vector_orbit,
                                    const SpectralOptions& opts = {});

}  // namespace vhrd

#endif
