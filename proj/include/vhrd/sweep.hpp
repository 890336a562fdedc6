#ifndef VHRD_SWEEP_HPP
#define VHRD_SWEEP_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vhrd/model.hpp"

namespace vhrd {

struct SweepVaried {
  std::string name;  // one of p1..p4, q1..q4
  double lo = -0.8;
  double hi = 0.8;
  int count = 17;
};

// target := factor * source, applied after the varied values; expresses the
// linked-parameter studies (q3 = p3, q4 = -p4, ...).
struct SweepLink {
  std::string target;
  std::string source;
  double factor = 1.0;
};

struct SweepSpec {
  std::vector<SweepVaried> varied;
  HeterogeneityParams fixed;
  std::vector<SweepLink> linked;
  int grid_n = 200;
  int steps_per_period = 1000;
  std::vector<std::string> outputs;  // subset of R0, lambda, zeta1, zeta2, R01, R02
  double orbit_tol = 1e-8;
  int max_periods = 5000;

  void validate() const;
  long long lattice_size() const;
};

struct SweepRow {
  std::vector<double> params;                 // varied values, declaration order
  std::vector<std::optional<double>> values;  // aligned with spec.outputs
  std::string status;                         // ok | subcritical | <error tag>
};

struct SweepTable {
  std::vector<std::string> param_columns;
  std::vector<std::string> output_columns;
  std::vector<SweepRow> rows;
};

// Evaluates the cosine-family model at every lattice point (row-major in the
// declaration order of the varied parameters). Rows where a species'
// reproduction number is at or below one report zeta/R0j outputs but leave R0
// and lambda empty with status "subcritical". Per-row failures land in the
// status column; the table row order is deterministic for any worker count.
SweepTable run_sweep(const SweepSpec& spec, int workers = -1);

void write_table(const SweepTable& table, std::ostream& out);
void write_table_csv(const SweepTable& table, const std::string& path);
std::string table_to_csv(const SweepTable& table);

// Sidecar record: the full sweep spec, resolution, tool version, wall time.
std::string sweep_metadata_json(const SweepSpec& spec, double wall_seconds,
                                int workers);

}  // namespace vhrd

#endif
