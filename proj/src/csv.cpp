#include "vhrd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vhrd/errors.hpp"

namespace vhrd {

std::string csv_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

double average(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

std::string trajectory_to_csv(const Trajectory& traj, const Grid& grid) {
  std::ostringstream os;
  os << "t,x,hu,hi,vu,vi\n";
  for (const StateField& s : traj.snapshots) {
    for (int i = 0; i < grid.node_count(); ++i) {
      os << csv_double(s.t) << "," << csv_double(grid.node(i)) << ","
         << csv_double(s.hu[i]) << "," << csv_double(s.hi[i]) << ","
         << csv_double(s.vu[i]) << "," << csv_double(s.vi[i]) << "\n";
    }
  }
  return os.str();
}

void write_trajectory_csv(const Trajectory& traj, const Grid& grid,
                          const std::string& path) {
  write_file(path, trajectory_to_csv(traj, grid));
}

std::string trajectory_averages_to_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,hu_avg,hi_avg,vu_avg,vi_avg\n";
  for (const StateField& s : traj.snapshots) {
    os << csv_double(s.t) << "," << csv_double(average(s.hu)) << ","
       << csv_double(average(s.hi)) << "," << csv_double(average(s.vu)) << ","
       << csv_double(average(s.vi)) << "\n";
  }
  return os.str();
}

void write_trajectory_averages_csv(const Trajectory& traj, const std::string& path) {
  write_file(path, trajectory_averages_to_csv(traj));
}

std::string orbit_to_csv(const FullOrbit& orbit, const Grid& grid) {
  std::ostringstream os;
  os << "t,x,hu,hi,vu,vi\n";
  for (const StateField& s : orbit.snaps) {
    for (int i = 0; i < grid.node_count(); ++i) {
      os << csv_double(s.t) << "," << csv_double(grid.node(i)) << ","
         << csv_double(s.hu[i]) << "," << csv_double(s.hi[i]) << ","
         << csv_double(s.vu[i]) << "," << csv_double(s.vi[i]) << "\n";
    }
  }
  return os.str();
}

std::string orbit_to_csv(const ScalarOrbit& orbit, const Grid& grid,
                         const std::string& column) {
  std::ostringstream os;
  os << "t,x," << column << "\n";
  for (const ScalarState& s : orbit.snaps) {
    for (int i = 0; i < grid.node_count(); ++i)
      os << csv_double(s.t) << "," << csv_double(grid.node(i)) << ","
         << csv_double(s.u[i]) << "\n";
  }
  return os.str();
}

void write_orbit_csv(const FullOrbit& orbit, const Grid& grid,
                     const std::string& path) {
  write_file(path, orbit_to_csv(orbit, grid));
}

ParsedCsv parse_csv(const std::string& text) {
  ParsedCsv parsed;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      parsed.header = cells;
      first = false;
      continue;
    }
    std::vector<std::optional<double>> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) {
      if (cell.empty()) {
        row.push_back(std::nullopt);
        continue;
      }
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        row.push_back(std::nullopt);
      else
        row.push_back(v);
    }
    parsed.rows.push_back(std::move(row));
  }
  if (parsed.header.empty()) throw IoError("CSV text has no header row");
  return parsed;
}

ParsedCsv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

}  // namespace vhrd
