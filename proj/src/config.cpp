#include "vhrd/config.hpp"

#include <fstream>

#include "vhrd/errors.hpp"
#include "vhrd/expression.hpp"

namespace vhrd {

void Numerics::validate() const {
  if (grid_n < 4) throw NumericsError("grid_n must be at least 4");
  if (dt && !(*dt > 0.0)) throw NumericsError("dt must be positive");
  if (eigen_dt && !(*eigen_dt > 0.0)) throw NumericsError("eigen_dt must be positive");
  if (!(orbit_tol > 0.0)) throw NumericsError("orbit_tol must be positive");
  if (max_periods < 1) throw NumericsError("max_periods must be positive");
}

TimeGrid Numerics::solver_grid(double period) const {
  return dt ? make_time_grid(period, *dt) : TimeGrid{period, 1000};
}

TimeGrid Numerics::eigen_grid(double period) const {
  return eigen_dt ? make_time_grid(period, *eigen_dt) : TimeGrid{period, 8000};
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
  return doc;
}

namespace {

double require_number(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_number())
    throw ConfigError("missing numeric field '" + key + "'");
  return doc[key].get<double>();
}

CoefficientField field_from_entry(const nlohmann::json& entry, double length,
                                  double period, const std::string& key) {
  if (entry.is_number()) {
    CoefficientField f = CoefficientField::constant(entry.get<double>(), period);
    f.set_domain_length(length);
    return f;
  }
  if (entry.is_string()) {
    auto fn = compile_expression(entry.get<std::string>());
    CoefficientField f(fn, period);
    f.set_domain_length(length);
    return f;
  }
  throw ConfigError("field '" + key + "' must be a number or an expression string");
}

BoundaryCondition bc_from_json(const nlohmann::json& doc, double length,
                               double period, const std::string& key) {
  if (!doc.contains(key)) throw ConfigError("missing boundary condition '" + key + "'");
  const nlohmann::json& b = doc[key];
  if (!b.contains("alpha") || !b["alpha"].is_number_integer())
    throw ConfigError(key + ".alpha must be 0 or 1");
  int a = b["alpha"].get<int>();
  if (a != 0 && a != 1) throw ConfigError(key + ".alpha must be 0 or 1");
  if (!b.contains("beta")) throw ConfigError(key + ".beta is required");
  BoundaryCondition bc;
  bc.alpha = a;
  bc.beta = field_from_entry(b["beta"], length, period, key + ".beta");
  return bc;
}

std::array<double, 4> quad(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != 4)
    throw ConfigError("family." + key + " must be an array of four numbers");
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = doc[key][i].get<double>();
  return out;
}

}  // namespace

ModelSpec model_from_json(const nlohmann::json& doc) {
  if (!doc.contains("family") || !doc["family"].contains("type"))
    throw ConfigError("model document needs family.type");
  const nlohmann::json& fam = doc["family"];
  const std::string type = fam["type"].get<std::string>();

  if (type == "section5") {
    auto p = quad(fam, "p");
    auto q = quad(fam, "q");
    HeterogeneityParams params{p[0], p[1], p[2], p[3], q[0], q[1], q[2], q[3]};
    ModelSpec spec = make_parametric_family(params);
    if (doc.contains("bc_host"))
      spec.bc_host = bc_from_json(doc, spec.length, spec.period, "bc_host");
    if (doc.contains("bc_vector"))
      spec.bc_vector = bc_from_json(doc, spec.length, spec.period, "bc_vector");
    return spec;
  }

  if (type == "constant") {
    double d1 = fam.contains("d1") ? fam["d1"].get<double>() : 0.1;
    double d2 = fam.contains("d2") ? fam["d2"].get<double>() : 0.2;
    std::optional<double> gamma;
    if (fam.contains("gamma")) gamma = fam["gamma"].get<double>();
    ModelSpec spec = make_constant_model(
        require_number(fam, "a1"), require_number(fam, "b1"),
        require_number(fam, "c1"), require_number(fam, "l1"),
        require_number(fam, "a2"), require_number(fam, "b2"),
        require_number(fam, "c2"), require_number(fam, "l2"), d1, d2, gamma);
    if (doc.contains("bc_host"))
      spec.bc_host = bc_from_json(doc, spec.length, spec.period, "bc_host");
    if (doc.contains("bc_vector"))
      spec.bc_vector = bc_from_json(doc, spec.length, spec.period, "bc_vector");
    return spec;
  }

  if (type == "custom-expression") {
    ModelSpec spec;
    spec.length = require_number(doc, "length");
    spec.period = require_number(doc, "period");
    if (!(spec.length > 0.0) || !(spec.period > 0.0))
      throw ConfigError("length and period must be positive");
    auto field = [&](const char* key) {
      if (!fam.contains(key))
        throw ConfigError(std::string("custom-expression family needs '") + key + "'");
      return field_from_entry(fam[key], spec.length, spec.period, key);
    };
    spec.coeffs.d1 = field("d1");
    spec.coeffs.d2 = field("d2");
    spec.coeffs.a1 = field("a1");
    spec.coeffs.a2 = field("a2");
    spec.coeffs.b1 = field("b1");
    spec.coeffs.b2 = field("b2");
    spec.coeffs.c1 = field("c1");
    spec.coeffs.c2 = field("c2");
    spec.coeffs.l1 = field("l1");
    spec.coeffs.l2 = field("l2");
    if (fam.contains("gamma")) spec.coeffs.gamma = field("gamma");
    spec.bc_host = bc_from_json(doc, spec.length, spec.period, "bc_host");
    spec.bc_vector = bc_from_json(doc, spec.length, spec.period, "bc_vector");
    return spec;
  }

  throw ConfigError("unknown family type '" + type + "'");
}

Numerics numerics_from_json(const nlohmann::json& doc) {
  Numerics n;
  if (doc.contains("numerics")) {
    const nlohmann::json& j = doc["numerics"];
    if (j.contains("grid_n")) n.grid_n = j["grid_n"].get<int>();
    if (j.contains("dt")) n.dt = j["dt"].get<double>();
    if (j.contains("eigen_dt")) n.eigen_dt = j["eigen_dt"].get<double>();
    if (j.contains("orbit_tol")) n.orbit_tol = j["orbit_tol"].get<double>();
    if (j.contains("max_periods")) n.max_periods = j["max_periods"].get<int>();
  }
  n.validate();
  return n;
}

}  // namespace vhrd
