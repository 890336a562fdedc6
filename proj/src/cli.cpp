#include "vhrd/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vhrd/analytic.hpp"
#include "vhrd/config.hpp"
#include "vhrd/csv.hpp"
#include "vhrd/dynamics.hpp"
#include "vhrd/errors.hpp"
#include "vhrd/parallel.hpp"
#include "vhrd/periodic.hpp"
#include "vhrd/spectral.hpp"
#include "vhrd/sweep.hpp"
#include "vhrd/version.hpp"

namespace vhrd {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// shared option plumbing
// ---------------------------------------------------------------------------

struct ModelOptions {
  std::string config_path;
  std::string family;
  std::vector<double> p, q;
  std::vector<double> params;  // a1,b1,c1,l1,a2,b2,c2,l2
  double d1 = 0.1, d2 = 0.2;
  std::optional<double> gamma;
};

struct NumericsOptions {
  int grid_n = 200;
  std::optional<double> dt;
  std::optional<double> eigen_dt;
  double orbit_tol = 1e-8;
  int max_periods = 5000;
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--config", m.config_path, "model configuration document (JSON)");
  cmd->add_option("--family", m.family, "built-in family: section5 | constant");
  cmd->add_option("--p", m.p, "section5 birth modulation p1,p2,p3,p4")->delimiter(',');
  cmd->add_option("--q", m.q, "section5 death modulation q1,q2,q3,q4")->delimiter(',');
  cmd->add_option("--params", m.params,
                  "constant family a1,b1,c1,l1,a2,b2,c2,l2")
      ->delimiter(',');
  cmd->add_option("--d1", m.d1, "host diffusivity for the constant family");
  cmd->add_option("--d2", m.d2, "vector diffusivity for the constant family");
  cmd->add_option_function<double>(
      "--gamma", [&m](double g) { m.gamma = g; },
      "recovery rate (standard-incidence model)");
}

void add_numerics_options(CLI::App* cmd, NumericsOptions& n) {
  cmd->add_option("--grid-n", n.grid_n, "spatial intervals")->capture_default_str();
  cmd->add_option("--dt", n.dt, "solver time step (default period/1000)");
  cmd->add_option("--eigen-dt", n.eigen_dt,
                  "eigen-solver time step (default period/8000)");
  cmd->add_option("--orbit-tol", n.orbit_tol, "periodic-orbit tolerance")
      ->capture_default_str();
  cmd->add_option("--max-periods", n.max_periods, "periodic-orbit period cap")
      ->capture_default_str();
}

ModelSpec resolve_model(const ModelOptions& m, Numerics* numerics_out) {
  if (!m.config_path.empty()) {
    json doc = load_json_file(m.config_path);
    if (numerics_out) *numerics_out = numerics_from_json(doc);
    return model_from_json(doc);
  }
  if (m.family == "section5") {
    if (m.p.size() != 4 || m.q.size() != 4)
      throw ConfigError("--family section5 requires --p and --q (four values each)");
    HeterogeneityParams params{m.p[0], m.p[1], m.p[2], m.p[3],
                               m.q[0], m.q[1], m.q[2], m.q[3]};
    return make_parametric_family(params);
  }
  if (m.family == "constant") {
    if (m.params.size() != 8)
      throw ConfigError("--family constant requires --params with eight values");
    return make_constant_model(m.params[0], m.params[1], m.params[2], m.params[3],
                               m.params[4], m.params[5], m.params[6], m.params[7],
                               m.d1, m.d2, m.gamma);
  }
  throw ConfigError("no model: pass --config or --family section5|constant");
}

Numerics resolve_numerics(const NumericsOptions& n, const Numerics& from_config) {
  Numerics out = from_config;
  out.grid_n = n.grid_n;
  if (n.dt) out.dt = n.dt;
  if (n.eigen_dt) out.eigen_dt = n.eigen_dt;
  out.orbit_tol = n.orbit_tol;
  out.max_periods = n.max_periods;
  out.validate();
  return out;
}

void require_valid(const ModelSpec& spec) {
  ValidationReport report = validate_model(spec);
  if (!report.pass) {
    std::string msg = "model violates the standing hypotheses:";
    for (const std::string& v : report.violations) msg += "\n  - " + v;
    throw ValidationError(msg);
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

StateField init_from_values(const Grid& grid, const std::vector<double>& v) {
  if (v.size() != 4)
    throw ConfigError("--init requires four values hu,hi,vu,vi");
  return StateField::constant(grid, v[0], v[1], v[2], v[3]);
}

struct OrbitBundle {
  ScalarOrbit host, vector;
};

OrbitBundle logistic_orbits(const ModelSpec& spec, const Grid& grid, const TimeGrid& tg,
                            const Numerics& numerics) {
  OrbitOptions opts;
  opts.tol = numerics.orbit_tol;
  opts.max_periods = numerics.max_periods;
  ScalarState ones{std::vector<double>(grid.node_count(), 1.0), 0.0};
  OrbitBundle bundle;
  bundle.host = find_periodic_orbit(Species::host, spec, grid, ones, tg, opts);
  bundle.vector = find_periodic_orbit(Species::vector, spec, grid, ones, tg, opts);
  return bundle;
}

json spectral_record(const ModelSpec& spec, const Numerics& numerics) {
  Grid grid = build_grid(spec.length, numerics.grid_n);
  TimeGrid tg = numerics.eigen_grid(spec.period);
  SpectralOptions opts;

  json out;
  out["schema_version"] = kSchemaVersion;
  out["tool_version"] = kToolVersion;
  json diag;
  diag["grid_n"] = numerics.grid_n;
  diag["eigen_dt"] = tg.dt();

  SpectralResult z1 = principal_eigenvalue_scalar(spec, grid, tg, Species::host, opts);
  SpectralResult z2 = principal_eigenvalue_scalar(spec, grid, tg, Species::vector, opts);
  out["zeta1"] = z1.eigenvalue;
  out["zeta2"] = z2.eigenvalue;
  diag["zeta1_iterations"] = z1.iterations;
  diag["zeta2_iterations"] = z2.iterations;

  R0Result r01 = basic_reproduction_scalar(spec, grid, tg, Species::host, opts);
  R0Result r02 = basic_reproduction_scalar(spec, grid, tg, Species::vector, opts);
  out["R01"] = r01.value;
  out["R02"] = r02.value;
  diag["R01_evaluations"] = r01.evaluations;
  diag["R02_evaluations"] = r02.evaluations;

  if (r01.value > 1.0 && r02.value > 1.0) {
    OrbitBundle orbits = logistic_orbits(spec, grid, tg, numerics);
    SpectralResult lam = principal_eigenvalue_coupled(spec, grid, tg, orbits.host,
                                                      orbits.vector, 1.0, opts);
    R0Result r0 =
        basic_reproduction_coupled(spec, grid, tg, orbits.host, orbits.vector, opts);
    out["lambda"] = lam.eigenvalue;
    out["R0"] = r0.value;
    diag["lambda_iterations"] = lam.iterations;
    diag["R0_evaluations"] = r0.evaluations;
    diag["sign_consistent"] = r0.sign_consistent;
    diag["host_orbit_periods"] = orbits.host.periods_used;
    diag["vector_orbit_periods"] = orbits.vector.periods_used;
  } else {
    out["lambda"] = nullptr;
    out["R0"] = nullptr;
    diag["note"] = "a species is subcritical (R0,j <= 1); R0 is undefined";
  }
  out["diagnostics"] = diag;
  return out;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_simulate(const ModelOptions& mopts, const NumericsOptions& nopts,
                 const std::vector<double>& init_values, double t_end, int stride,
                 bool averages, const std::string& out_path) {
  Numerics from_config;
  ModelSpec spec = resolve_model(mopts, &from_config);
  Numerics numerics = resolve_numerics(nopts, from_config);
  require_valid(spec);
  Grid grid = build_grid(spec.length, numerics.grid_n);
  TimeGrid tg = numerics.solver_grid(spec.period);
  StateField init = init_from_values(grid, init_values);
  Trajectory traj = simulate_full(spec, grid, std::move(init), t_end, tg, stride);
  write_text(out_path,
             averages ? trajectory_averages_to_csv(traj) : trajectory_to_csv(traj, grid));
  return kExitOk;
}

int cmd_periodic(const ModelOptions& mopts, const NumericsOptions& nopts,
                 const std::string& system, const std::vector<double>& init_values,
                 const std::string& out_path, const std::string& diag_path) {
  Numerics from_config;
  ModelSpec spec = resolve_model(mopts, &from_config);
  Numerics numerics = resolve_numerics(nopts, from_config);
  require_valid(spec);
  Grid grid = build_grid(spec.length, numerics.grid_n);
  TimeGrid tg = numerics.solver_grid(spec.period);
  OrbitOptions opts;
  opts.tol = numerics.orbit_tol;
  opts.max_periods = numerics.max_periods;

  double residual = 0.0;
  int periods = 0;
  bool converged = false;
  if (system == "full") {
    StateField init = init_from_values(grid, init_values);
    FullOrbit orbit = find_periodic_orbit(spec, grid, std::move(init), tg, opts);
    residual = orbit.residual;
    periods = orbit.periods_used;
    converged = orbit.converged;
    write_text(out_path, orbit_to_csv(orbit, grid));
  } else if (system == "host" || system == "vector") {
    if (init_values.size() != 1)
      throw ConfigError("--init for a logistic orbit takes one value");
    Species which = system == "host" ? Species::host : Species::vector;
    ScalarState init{std::vector<double>(grid.node_count(), init_values[0]), 0.0};
    ScalarOrbit orbit = find_periodic_orbit(which, spec, grid, std::move(init), tg, opts);
    residual = orbit.residual;
    periods = orbit.periods_used;
    converged = orbit.converged;
    write_text(out_path, orbit_to_csv(orbit, grid, system == "host" ? "H" : "V"));
  } else {
    throw ConfigError("--system must be full, host, or vector");
  }

  if (!diag_path.empty()) {
    json diag;
    diag["schema_version"] = kSchemaVersion;
    diag["system"] = system;
    diag["residual"] = residual;
    diag["periods_used"] = periods;
    diag["converged"] = converged;
    write_text(diag_path, diag.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_eigen_or_r0(const ModelOptions& mopts, const NumericsOptions& nopts,
                    const std::string& out_path) {
  Numerics from_config;
  ModelSpec spec = resolve_model(mopts, &from_config);
  Numerics numerics = resolve_numerics(nopts, from_config);
  require_valid(spec);
  json record = spectral_record(spec, numerics);
  write_text(out_path, record.dump(2) + "\n");
  return kExitOk;
}

int cmd_verify_constant(const std::vector<double>& params, double d1, double d2,
                        const NumericsOptions& nopts, const std::string& out_path) {
  if (params.size() != 8)
    throw ConfigError("--params requires eight values a1,b1,c1,l1,a2,b2,c2,l2");
  ConstantParams cp{params[0], params[1], params[2], params[3],
                    params[4], params[5], params[6], params[7], std::nullopt};
  ConstantCaseReport exact = constant_case_report(cp);
  ModelSpec spec = make_constant_model(cp.a1, cp.b1, cp.c1, cp.l1, cp.a2, cp.b2, cp.c2,
                                       cp.l2, d1, d2);
  require_valid(spec);
  NumericsOptions n = nopts;
  Numerics numerics = resolve_numerics(n, Numerics{});
  Grid grid = build_grid(spec.length, numerics.grid_n);
  TimeGrid tg = numerics.eigen_grid(spec.period);
  SpectralOptions opts;

  struct Line {
    std::string name;
    double numeric, exact;
  };
  std::vector<Line> lines;
  lines.push_back({"zeta1",
                   principal_eigenvalue_scalar(spec, grid, tg, Species::host, opts)
                       .eigenvalue,
                   exact.zeta1});
  lines.push_back({"zeta2",
                   principal_eigenvalue_scalar(spec, grid, tg, Species::vector, opts)
                       .eigenvalue,
                   exact.zeta2});
  if (exact.r01)
    lines.push_back({"R01",
                     basic_reproduction_scalar(spec, grid, tg, Species::host, opts).value,
                     *exact.r01});
  if (exact.r02)
    lines.push_back(
        {"R02",
         basic_reproduction_scalar(spec, grid, tg, Species::vector, opts).value,
         *exact.r02});

  json record;
  record["schema_version"] = kSchemaVersion;
  record["regime"] = regime_name(exact.regime);

  if (exact.lambda) {
    OrbitBundle orbits = logistic_orbits(spec, grid, tg, numerics);
    lines.push_back({"lambda",
                     principal_eigenvalue_coupled(spec, grid, tg, orbits.host,
                                                  orbits.vector, 1.0, opts)
                         .eigenvalue,
                     *exact.lambda});
    lines.push_back(
        {"R0",
         basic_reproduction_coupled(spec, grid, tg, orbits.host, orbits.vector, opts)
             .value,
         *exact.r0});
    if (exact.equilibrium) {
      // numeric equilibrium from the reduced periodic orbit
      TimeGrid tg_solver = numerics.solver_grid(spec.period);
      OrbitBundle solver_orbits = logistic_orbits(spec, grid, tg_solver, numerics);
      PairState seed;
      seed.hi.assign(grid.node_count(), 0.0);
      seed.vi.assign(grid.node_count(), 0.0);
      for (int i = 0; i < grid.node_count(); ++i) {
        seed.hi[i] = 0.5 * solver_orbits.host.snaps[0].u[i];
        seed.vi[i] = 0.5 * solver_orbits.vector.snaps[0].u[i];
      }
      OrbitOptions oopts;
      oopts.tol = numerics.orbit_tol;
      oopts.max_periods = numerics.max_periods;
      PairOrbit reduced = find_periodic_orbit(spec, grid, solver_orbits.host,
                                              solver_orbits.vector, seed, tg_solver,
                                              oopts);
      auto mid = [&](const std::vector<double>& v) { return v[grid.node_count() / 2]; };
      double hi_num = mid(reduced.snaps[0].hi);
      double vi_num = mid(reduced.snaps[0].vi);
      double h_num = mid(solver_orbits.host.snaps[0].u);
      double v_num = mid(solver_orbits.vector.snaps[0].u);
      lines.push_back({"Hu", h_num - hi_num, exact.equilibrium->hu});
      lines.push_back({"Hi", hi_num, exact.equilibrium->hi});
      lines.push_back({"Vu", v_num - vi_num, exact.equilibrium->vu});
      lines.push_back({"Vi", vi_num, exact.equilibrium->vi});
    }
  }

  double max_rel_gap = 0.0;
  json table = json::array();
  std::ostringstream text;
  text << "quantity        numeric              closed-form          rel-gap\n";
  for (const Line& line : lines) {
    double denom = std::max(std::abs(line.exact), 1e-12);
    double rel = std::abs(line.numeric - line.exact) / denom;
    max_rel_gap = std::max(max_rel_gap, rel);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-15s %-20.12g %-20.12g %.3e\n", line.name.c_str(),
                  line.numeric, line.exact, rel);
    text << buf;
    table.push_back({{"quantity", line.name},
                     {"numeric", line.numeric},
                     {"closed_form", line.exact},
                     {"rel_gap", rel}});
  }
  text << "max relative gap: " << max_rel_gap << "\n";
  record["table"] = table;
  record["max_rel_gap"] = max_rel_gap;

  std::cout << text.str();
  if (!out_path.empty()) write_text(out_path, record.dump(2) + "\n");
  return kExitOk;
}

SweepVaried parse_vary(const std::string& text) {
  // name=lo:hi:count
  auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("--vary expects name=lo:hi:count");
  SweepVaried v;
  v.name = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  if (std::sscanf(rest.c_str(), "%lf:%lf:%d", &v.lo, &v.hi, &v.count) != 3)
    throw ConfigError("--vary expects name=lo:hi:count, got '" + text + "'");
  return v;
}

SweepLink parse_link(const std::string& text) {
  // q3=p3 or q3=-p3
  auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("--link expects target=[-]source");
  SweepLink link;
  link.target = text.substr(0, eq);
  std::string src = text.substr(eq + 1);
  link.factor = 1.0;
  if (!src.empty() && src[0] == '-') {
    link.factor = -1.0;
    src = src.substr(1);
  }
  link.source = src;
  return link;
}

int cmd_sweep(const std::vector<std::string>& vary, const std::vector<std::string>& fixed,
              const std::vector<std::string>& links,
              const std::vector<std::string>& outputs, int grid_n, double dt,
              const std::string& out_path, const std::string& metadata_path,
              int workers) {
  SweepSpec spec;
  for (const std::string& v : vary) spec.varied.push_back(parse_vary(v));
  for (const std::string& f : fixed) {
    auto eq = f.find('=');
    if (eq == std::string::npos) throw ConfigError("--fixed expects name=value");
    spec.fixed.by_name(f.substr(0, eq)) = std::stod(f.substr(eq + 1));
  }
  for (const std::string& l : links) spec.linked.push_back(parse_link(l));
  spec.outputs = outputs.empty() ? std::vector<std::string>{"R0"} : outputs;
  spec.grid_n = grid_n;
  TimeGrid tg = make_time_grid(1.0, dt);
  spec.steps_per_period = tg.steps_per_period;

  workers = workers_from_env(workers);
  auto t0 = std::chrono::steady_clock::now();
  SweepTable table = run_sweep(spec, workers);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (out_path.empty() || out_path == "-")
    std::cout << table_to_csv(table);
  else
    write_table_csv(table, out_path);
  if (!metadata_path.empty())
    write_text(metadata_path, sweep_metadata_json(spec, wall, workers) + "\n");
  return kExitOk;
}

json dynamics_report_to_json(const DynamicsReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["predicted_case"] = predicted_case_name(r.predicted);
  j["R01"] = r.r01;
  j["R02"] = r.r02;
  if (r.r0)
    j["R0"] = *r.r0;
  else
    j["R0"] = nullptr;
  j["measured_gap"] = r.measured_gap;
  j["horizon_periods"] = r.horizon_periods;
  j["tol"] = r.tol;
  j["verdict"] = r.verdict;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

int cmd_dynamics(const ModelOptions& mopts, const NumericsOptions& nopts,
                 const std::vector<double>& init_values, int horizon, double tol,
                 const std::string& batch_path, int workers,
                 const std::string& out_path, const std::string& dump_path) {
  DynamicsOptions opts;
  opts.horizon_periods = horizon;
  opts.tol = tol;
  opts.grid_n = nopts.grid_n;
  opts.orbit_tol = nopts.orbit_tol;
  opts.max_periods = nopts.max_periods;

  if (!batch_path.empty()) {
    json doc = load_json_file(batch_path);
    if (!doc.is_array()) throw ConfigError("batch document must be a JSON array");
    std::vector<DynamicsScenario> scenarios;
    for (const json& entry : doc) {
      DynamicsScenario sc;
      sc.name = entry.value("name", "scenario-" + std::to_string(scenarios.size()));
      sc.spec = model_from_json(entry);
      require_valid(sc.spec);
      if (!entry.contains("init") || !entry["init"].is_array() ||
          entry["init"].size() != 4)
        throw ConfigError("each scenario needs init = [hu, hi, vu, vi]");
      Grid grid = build_grid(sc.spec.length, opts.grid_n);
      sc.init = StateField::constant(grid, entry["init"][0], entry["init"][1],
                                     entry["init"][2], entry["init"][3]);
      sc.opts = opts;
      if (nopts.dt)
        sc.opts.solver_steps_per_period =
            make_time_grid(sc.spec.period, *nopts.dt).steps_per_period;
      if (nopts.eigen_dt)
        sc.opts.eigen_steps_per_period =
            make_time_grid(sc.spec.period, *nopts.eigen_dt).steps_per_period;
      if (entry.contains("horizon")) sc.opts.horizon_periods = entry["horizon"];
      if (entry.contains("tol")) sc.opts.tol = entry["tol"];
      scenarios.push_back(std::move(sc));
    }
    workers = workers_from_env(workers);
    std::vector<DynamicsReport> reports =
        check_threshold_dynamics_batch(scenarios, workers);
    json out = json::array();
    bool all_pass = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      json j = dynamics_report_to_json(reports[i]);
      j["name"] = scenarios[i].name;
      all_pass = all_pass && reports[i].pass();
      out.push_back(std::move(j));
    }
    write_text(out_path, out.dump(2) + "\n");
    return all_pass ? kExitOk : kExitNonConvergence;
  }

  Numerics from_config;
  ModelSpec spec = resolve_model(mopts, &from_config);
  Numerics numerics = resolve_numerics(nopts, from_config);
  require_valid(spec);
  Grid grid = build_grid(spec.length, numerics.grid_n);
  opts.solver_steps_per_period = numerics.solver_grid(spec.period).steps_per_period;
  opts.eigen_steps_per_period = numerics.eigen_grid(spec.period).steps_per_period;
  opts.orbit_tol = numerics.orbit_tol;
  opts.max_periods = numerics.max_periods;
  StateField init = init_from_values(grid, init_values);
  DynamicsReport report = check_threshold_dynamics(spec, init, opts);
  write_text(out_path, dynamics_report_to_json(report).dump(2) + "\n");

  if (!dump_path.empty()) {
    TimeGrid tg = numerics.solver_grid(spec.period);
    Trajectory traj = simulate_full(spec, grid, init_from_values(grid, init_values),
                                    horizon * spec.period, tg, tg.steps_per_period);
    write_trajectory_csv(traj, grid, dump_path);
  }
  return report.verdict == "pass" || report.verdict == "threshold-indeterminate"
             ? kExitOk
             : kExitNonConvergence;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"time-periodic vector-host reaction-diffusion laboratory"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "integrate the full system");
  ModelOptions sim_model;
  NumericsOptions sim_numerics;
  std::vector<double> sim_init;
  double sim_t_end = 1.0;
  int sim_stride = 1;
  bool sim_averages = false;
  std::string sim_out;
  bool sim_modified = false;
  add_model_options(simulate, sim_model);
  add_numerics_options(simulate, sim_numerics);
  simulate->add_option("--init", sim_init, "initial densities hu,hi,vu,vi")
      ->delimiter(',')
      ->required();
  simulate->add_option("--t-end", sim_t_end, "final time")->required();
  simulate->add_option("--stride", sim_stride, "keep every k-th snapshot")
      ->capture_default_str();
  simulate->add_flag("--averages", sim_averages, "emit spatial averages only");
  simulate->add_flag("--modified", sim_modified,
                     "standard-incidence variant with recovery");
  simulate->add_option("--out", sim_out, "output CSV path (default stdout)");

  // periodic
  auto* periodic = app.add_subcommand("periodic", "extract a periodic orbit");
  ModelOptions per_model;
  NumericsOptions per_numerics;
  std::string per_system = "full";
  std::vector<double> per_init;
  std::string per_out, per_diag;
  add_model_options(periodic, per_model);
  add_numerics_options(periodic, per_numerics);
  periodic->add_option("--system", per_system, "full | host | vector")
      ->capture_default_str();
  periodic->add_option("--init", per_init, "initial densities")->delimiter(',')->required();
  periodic->add_option("--out", per_out, "orbit CSV path (default stdout)");
  periodic->add_option("--diag", per_diag, "diagnostics JSON path");

  // eigen / r0 share one record
  auto* eigen = app.add_subcommand("eigen", "principal eigenvalues zeta1, zeta2, lambda");
  ModelOptions eig_model;
  NumericsOptions eig_numerics;
  std::string eig_out;
  add_model_options(eigen, eig_model);
  add_numerics_options(eigen, eig_numerics);
  eigen->add_option("--out", eig_out, "output JSON path (default stdout)");

  auto* r0 = app.add_subcommand("r0", "reproduction numbers R01, R02, R0");
  ModelOptions r0_model;
  NumericsOptions r0_numerics;
  std::string r0_out;
  add_model_options(r0, r0_model);
  add_numerics_options(r0, r0_numerics);
  r0->add_option("--out", r0_out, "output JSON path (default stdout)");

  // verify-constant
  auto* verify = app.add_subcommand("verify-constant",
                                    "numeric spectral quantities vs closed forms");
  std::vector<double> ver_params;
  double ver_d1 = 0.1, ver_d2 = 0.2;
  NumericsOptions ver_numerics;
  std::string ver_out;
  verify->add_option("--params", ver_params, "a1,b1,c1,l1,a2,b2,c2,l2")
      ->delimiter(',')
      ->required();
  verify->add_option("--d1", ver_d1, "host diffusivity")->capture_default_str();
  verify->add_option("--d2", ver_d2, "vector diffusivity")->capture_default_str();
  add_numerics_options(verify, ver_numerics);
  verify->add_option("--out", ver_out, "record JSON path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "level-set table over the cosine family");
  std::vector<std::string> sw_vary, sw_fixed, sw_links, sw_outputs;
  int sw_grid_n = 200, sw_workers = -1;
  double sw_dt = 1e-3;
  std::string sw_out, sw_meta;
  sweep->add_option("--vary", sw_vary, "name=lo:hi:count (repeatable)")->required();
  sweep->add_option("--fixed", sw_fixed, "name=value (repeatable)");
  sweep->add_option("--link", sw_links, "target=[-]source (repeatable)");
  sweep->add_option("--outputs", sw_outputs, "subset of R0,lambda,zeta1,zeta2,R01,R02")
      ->delimiter(',');
  sweep->add_option("--grid-n", sw_grid_n, "spatial intervals")->capture_default_str();
  sweep->add_option("--dt", sw_dt, "sweep time step")->capture_default_str();
  sweep->add_option("--workers", sw_workers,
                    "worker count (0 = serial; VHRD_WORKERS overrides)");
  sweep->add_option("--out", sw_out, "table CSV path (default stdout)");
  sweep->add_option("--metadata", sw_meta, "sidecar metadata JSON path");

  // dynamics-check
  auto* dyn = app.add_subcommand("dynamics-check", "long-horizon threshold dynamics");
  ModelOptions dyn_model;
  NumericsOptions dyn_numerics;
  std::vector<double> dyn_init;
  int dyn_horizon = 500;
  double dyn_tol = 1e-3;
  int dyn_workers = -1;
  std::string dyn_batch, dyn_out, dyn_dump;
  add_model_options(dyn, dyn_model);
  add_numerics_options(dyn, dyn_numerics);
  dyn->add_option("--init", dyn_init, "initial densities hu,hi,vu,vi")->delimiter(',');
  dyn->add_option("--horizon", dyn_horizon, "periods to simulate")->capture_default_str();
  dyn->add_option("--tol", dyn_tol, "pass tolerance")->capture_default_str();
  dyn->add_option("--batch", dyn_batch, "JSON array of scenarios");
  dyn->add_option("--workers", dyn_workers, "worker count for --batch");
  dyn->add_option("--out", dyn_out, "report JSON path (default stdout)");
  dyn->add_option("--dump-trajectory", dyn_dump, "post-mortem trajectory CSV");

  std::vector<const char*> argv;
  argv.push_back("vhrd");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    json err;
    err["schema_version"] = kSchemaVersion;
    err["error"] = {{"kind", "usage"}, {"exit_code", kExitUsage}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return kExitUsage;
  }

  auto fail = [](const char* kind, int code, const std::string& message) {
    json err;
    err["schema_version"] = kSchemaVersion;
    err["error"] = {{"kind", kind}, {"exit_code", code}, {"message", message}};
    std::cout << err.dump(2) << "\n";
    return code;
  };

  try {
    if (simulate->parsed()) {
      if (sim_modified) {
        Numerics from_config;
        ModelSpec spec = resolve_model(sim_model, &from_config);
        Numerics numerics = resolve_numerics(sim_numerics, from_config);
        require_valid(spec);
        Grid grid = build_grid(spec.length, numerics.grid_n);
        TimeGrid tg = numerics.solver_grid(spec.period);
        Trajectory traj = simulate_modified(spec, grid, init_from_values(grid, sim_init),
                                            sim_t_end, tg, sim_stride);
        write_text(sim_out, sim_averages ? trajectory_averages_to_csv(traj)
                                         : trajectory_to_csv(traj, grid));
        return kExitOk;
      }
      return cmd_simulate(sim_model, sim_numerics, sim_init, sim_t_end, sim_stride,
                          sim_averages, sim_out);
    }
    if (periodic->parsed())
      return cmd_periodic(per_model, per_numerics, per_system, per_init, per_out,
                          per_diag);
    if (eigen->parsed()) return cmd_eigen_or_r0(eig_model, eig_numerics, eig_out);
    if (r0->parsed()) return cmd_eigen_or_r0(r0_model, r0_numerics, r0_out);
    if (verify->parsed())
      return cmd_verify_constant(ver_params, ver_d1, ver_d2, ver_numerics, ver_out);
    if (sweep->parsed())
      return cmd_sweep(sw_vary, sw_fixed, sw_links, sw_outputs, sw_grid_n, sw_dt,
                       sw_out, sw_meta, sw_workers);
    if (dyn->parsed())
      return cmd_dynamics(dyn_model, dyn_numerics, dyn_init, dyn_horizon, dyn_tol,
                          dyn_batch, dyn_workers, dyn_out, dyn_dump);
    return fail("usage", kExitUsage, "no subcommand given");
  } catch (const ConfigError& e) {
    return fail("config", kExitConfig, e.what());
  } catch (const NumericsError& e) {
    return fail("numerics", kExitNumerics, e.what());
  } catch (const ValidationError& e) {
    return fail("validation", kExitValidation, e.what());
  } catch (const NonConvergenceError& e) {
    return fail("non-convergence", kExitNonConvergence, e.what());
  } catch (const BracketError& e) {
    return fail("non-convergence", kExitNonConvergence, e.what());
  } catch (const PositivityError& e) {
    return fail("non-convergence", kExitNonConvergence, e.what());
  } catch (const UnsupportedError& e) {
    return fail("unsupported", kExitUnsupported, e.what());
  } catch (const IoError& e) {
    return fail("io", kExitIo, e.what());
  } catch (const std::exception& e) {
    return fail("internal", kExitInternal, e.what());
  }
}

}  // namespace vhrd
