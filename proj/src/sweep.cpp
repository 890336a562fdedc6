#include "vhrd/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vhrd/csv.hpp"
#include "vhrd/errors.hpp"
#include "vhrd/parallel.hpp"
#include "vhrd/periodic.hpp"
#include "vhrd/spectral.hpp"
#include "vhrd/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vhrd {

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
#ifdef _OPENMP
  if (workers != 0) {
    int team = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
#else
  (void)workers;
#endif
  for (int i = 0; i < count; ++i) body(i);
}

int workers_from_env(int fallback) {
  const char* env = std::getenv("VHRD_WORKERS");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v < 0 || v > 4096)
    throw ConfigError("VHRD_WORKERS must be a small nonnegative integer");
  return static_cast<int>(v);
}

namespace {

const std::set<std::string> kParamNames = {"p1", "p2", "p3", "p4",
                                           "q1", "q2", "q3", "q4"};
const std::set<std::string> kOutputNames = {"R0", "lambda", "zeta1",
                                            "zeta2", "R01", "R02"};

}  // namespace

void SweepSpec::validate() const {
  if (varied.empty()) throw ValidationError("sweep needs at least one varied parameter");
  std::set<std::string> seen;
  for (const SweepVaried& v : varied) {
    if (!kParamNames.count(v.name))
      throw ValidationError("unknown sweep parameter '" + v.name + "'");
    if (!seen.insert(v.name).second)
      throw ValidationError("sweep parameter '" + v.name + "' varied twice");
    if (v.count < 1) throw ValidationError("sample count must be at least 1");
    if (v.lo > v.hi) throw ValidationError("empty range for '" + v.name + "'");
    if (v.lo < -1.0 || v.hi > 1.0)
      throw ValidationError("range for '" + v.name + "' leaves [-1, 1]");
  }
  for (const SweepLink& l : linked) {
    if (!kParamNames.count(l.target) || !kParamNames.count(l.source))
      throw ValidationError("link references an unknown parameter");
    if (!seen.count(l.source))
      throw ValidationError("link source '" + l.source + "' is not varied");
    if (seen.count(l.target))
      throw ValidationError("link target '" + l.target + "' is itself varied");
    if (std::abs(l.factor) != 1.0)
      throw ValidationError("link factor must be +1 or -1");
  }
  if (outputs.empty()) throw ValidationError("sweep requests no outputs");
  for (const std::string& o : outputs)
    if (!kOutputNames.count(o))
      throw ValidationError("unknown sweep output '" + o + "'");
  if (grid_n < 4) throw ValidationError("sweep grid too coarse");
  if (steps_per_period < 1) throw ValidationError("sweep needs at least one step");
  if (!(orbit_tol > 0.0)) throw ValidationError("orbit tolerance must be positive");
}

long long SweepSpec::lattice_size() const {
  long long n = 1;
  for (const SweepVaried& v : varied) n *= v.count;
  return n;
}

namespace {

bool wants(const SweepSpec& spec, const std::string& name) {
  return std::find(spec.outputs.begin(), spec.outputs.end(), name) !=
         spec.outputs.end();
}

void evaluate_point(const SweepSpec& spec, const std::vector<double>& point,
                    SweepRow& row) {
  HeterogeneityParams params = spec.fixed;
  for (std::size_t d = 0; d < spec.varied.size(); ++d)
    params.by_name(spec.varied[d].name) = point[d];
  for (const SweepLink& link : spec.linked)
    params.by_name(link.target) = link.factor * params.by_name(link.source);

  row.params = point;
  row.values.assign(spec.outputs.size(), std::nullopt);
  auto put = [&](const std::string& name, double v) {
    for (std::size_t i = 0; i < spec.outputs.size(); ++i)
      if (spec.outputs[i] == name) row.values[i] = v;
  };

  ModelSpec model = make_parametric_family(params);
  Grid grid = build_grid(model.length, spec.grid_n);
  TimeGrid tg{model.period, spec.steps_per_period};
  SpectralOptions opts;

  R0Result r01, r02;
  try {
    r01 = basic_reproduction_scalar(model, grid, tg, Species::host, opts);
    r02 = basic_reproduction_scalar(model, grid, tg, Species::vector, opts);
    put("R01", r01.value);
    put("R02", r02.value);
    if (wants(spec, "zeta1"))
      put("zeta1",
          principal_eigenvalue_scalar(model, grid, tg, Species::host, opts).eigenvalue);
    if (wants(spec, "zeta2"))
      put("zeta2",
          principal_eigenvalue_scalar(model, grid, tg, Species::vector, opts).eigenvalue);
  } catch (const BracketError&) {
    row.status = "root-not-bracketed";
    return;
  } catch (const NonConvergenceError&) {
    row.status = "eig-nonconverged";
    return;
  }

  if (r01.value <= 1.0 || r02.value <= 1.0) {
    row.status = "subcritical";
    return;
  }
  if (!wants(spec, "R0") && !wants(spec, "lambda")) {
    row.status = "ok";
    return;
  }

  ScalarOrbit host_orbit, vector_orbit;
  try {
    OrbitOptions oopts;
    oopts.tol = spec.orbit_tol;
    oopts.max_periods = spec.max_periods;
    ScalarState ones{std::vector<double>(grid.node_count(), 1.0), 0.0};
    host_orbit = find_periodic_orbit(Species::host, model, grid, ones, tg, oopts);
    vector_orbit = find_periodic_orbit(Species::vector, model, grid, ones, tg, oopts);
  } catch (const NonConvergenceError&) {
    row.status = "orbit-nonconverged";
    return;
  }

  try {
    if (wants(spec, "lambda"))
      put("lambda", principal_eigenvalue_coupled(model, grid, tg, host_orbit,
                                                 vector_orbit, 1.0, opts)
                        .eigenvalue);
    if (wants(spec, "R0"))
      put("R0",
          basic_reproduction_coupled(model, grid, tg, host_orbit, vector_orbit, opts)
              .value);
  } catch (const BracketError&) {
    row.status = "root-not-bracketed";
    return;
  } catch (const NonConvergenceError&) {
    row.status = "eig-nonconverged";
    return;
  }
  row.status = "ok";
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  const long long total = spec.lattice_size();
  if (total > 2'000'000) throw ValidationError("sweep lattice unreasonably large");

  SweepTable table;
  for (const SweepVaried& v : spec.varied) table.param_columns.push_back(v.name);
  table.output_columns = spec.outputs;
  table.rows.resize(total);

  const int dims = static_cast<int>(spec.varied.size());
  parallel_for(static_cast<int>(total), workers, [&](int index) {
    // row-major: first declared parameter is the slowest axis
    std::vector<double> point(dims);
    long long rest = index;
    for (int d = dims - 1; d >= 0; --d) {
      const SweepVaried& v = spec.varied[d];
      int i = static_cast<int>(rest % v.count);
      rest /= v.count;
      point[d] = v.count == 1 ? v.lo : v.lo + (v.hi - v.lo) * i / (v.count - 1);
    }
    SweepRow& row = table.rows[index];
    try {
      evaluate_point(spec, point, row);
    } catch (const std::exception& e) {
      row.params = point;
      row.values.assign(spec.outputs.size(), std::nullopt);
      row.status = std::string("error: ") + e.what();
    }
  });
  return table;
}

void write_table(const SweepTable& table, std::ostream& out) {
  if (table.rows.empty()) throw ValidationError("refusing to write an empty table");
  for (std::size_t i = 0; i < table.param_columns.size(); ++i)
    out << (i ? "," : "") << table.param_columns[i];
  for (const std::string& c : table.output_columns) out << "," << c;
  out << ",status\n";
  for (const SweepRow& row : table.rows) {
    for (std::size_t i = 0; i < row.params.size(); ++i)
      out << (i ? "," : "") << csv_double(row.params[i]);
    for (const auto& v : row.values) {
      out << ",";
      if (v) out << csv_double(*v);
    }
    out << "," << row.status << "\n";
  }
}

std::string table_to_csv(const SweepTable& table) {
  std::ostringstream os;
  write_table(table, os);
  return os.str();
}

void write_table_csv(const SweepTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_table(table, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string sweep_metadata_json(const SweepSpec& spec, double wall_seconds,
                                int workers) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["wall_seconds"] = wall_seconds;
  j["workers"] = workers;
  j["resolution"] = {{"grid_n", spec.grid_n},
                     {"steps_per_period", spec.steps_per_period}};
  j["orbit_tol"] = spec.orbit_tol;
  j["max_periods"] = spec.max_periods;
  nlohmann::json varied = nlohmann::json::array();
  for (const SweepVaried& v : spec.varied)
    varied.push_back({{"name", v.name}, {"lo", v.lo}, {"hi", v.hi}, {"count", v.count}});
  j["varied"] = varied;
  nlohmann::json fixed;
  for (const auto& [name, value] : spec.fixed.named()) fixed[name] = value;
  j["fixed"] = fixed;
  nlohmann::json linked = nlohmann::json::array();
  for (const SweepLink& l : spec.linked)
    linked.push_back({{"target", l.target}, {"source", l.source}, {"factor", l.factor}});
  j["linked"] = linked;
  j["outputs"] = spec.outputs;
  return j.dump(2);
}

}  // namespace vhrd
