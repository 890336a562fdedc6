#ifndef VHRD_CSV_HPP
#define VHRD_CSV_HPP

#include <optional>
#include <string>
#include <vector>

#include "vhrd/grid.hpp"
#include "vhrd/solver.hpp"

namespace vhrd {

// 12 significant digits, locale-independent.
std::string csv_double(double v);

// Long format: t,x,hu,hi,vu,vi (one row per node per snapshot).
void write_trajectory_csv(const Trajectory& traj, const Grid& grid,
                          const std::string& path);
std::string trajectory_to_csv(const Trajectory& traj, const Grid& grid);

// Spatial-average time series: t,hu_avg,hi_avg,vu_avg,vi_avg.
std::string trajectory_averages_to_csv(const Trajectory& traj);
void write_trajectory_averages_csv(const Trajectory& traj, const std::string& path);

// Orbit heat-map data: t,x,<component columns>.
std::string orbit_to_csv(const FullOrbit& orbit, const Grid& grid);
std::string orbit_to_csv(const ScalarOrbit& orbit, const Grid& grid,
                         const std::string& column);
void write_orbit_csv(const FullOrbit& orbit, const Grid& grid, const std::string& path);

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;  // empty cell -> nullopt
};

// Reads numeric CSV produced by the writers above (non-numeric trailing
// columns such as a sweep's status are preserved as nullopt cells).
ParsedCsv read_csv(const std::string& path);
ParsedCsv parse_csv(const std::string& text);

}  // namespace vhrd

#endif
