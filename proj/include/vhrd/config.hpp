#ifndef VHRD_CONFIG_HPP
#define VHRD_CONFIG_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "vhrd/model.hpp"
#include "vhrd/solver.hpp"

namespace vhrd {

// Numerical settings shared by the subcommands. Only numerics carry
// defaults; model parameters always come from the configuration or flags.
struct Numerics {
  int grid_n = 200;
  std::optional<double> dt;        // solver step; default period/1000
  std::optional<double> eigen_dt;  // eigen-solver step; default period/8000
  double orbit_tol = 1e-8;
  int max_periods = 5000;

  void validate() const;
  TimeGrid solver_grid(double period) const;
  TimeGrid eigen_grid(double period) const;
};

// Model document:
//   {
//     "length": 1.0, "period": 1.0,              // required for custom models
//     "bc_host": {"alpha": 1, "beta": 0.0},      // beta: number or expression
//     "bc_vector": {"alpha": 0, "beta": 1.0},
//     "family": {"type": "section5", "p": [..4..], "q": [..4..]}
//             | {"type": "constant", "a1": .., "b1": .., "c1": .., "l1": ..,
//                "a2": .., "b2": .., "c2": .., "l2": ..,
//                "d1": 0.1, "d2": 0.2, "gamma": ..}
//             | {"type": "custom-expression", "d1": "0.1", "a1": "2*(1+0.5*cos(pi*x))", ...}
//   }
// Built-in families imply [0,1] x [0,1] with no-flux boundaries unless the
// document overrides them; custom-expression models must state everything.
ModelSpec model_from_json(const nlohmann::json& doc);
Numerics numerics_from_json(const nlohmann::json& doc);

nlohmann::json load_json_file(const std::string& path);

}  // namespace vhrd

#endif
