#ifndef VHRD_GRID_HPP
#define VHRD_GRID_HPP

#include "vhrd/errors.hpp"

namespace vhrd {

// Uniform nodes x_i = i*h, i = 0..N, h = L/N.
struct Grid {
  double length = 1.0;
  int intervals = 4;

  double spacing() const { return length / intervals; }
  int node_count() const { return intervals + 1; }
  double node(int i) const { return length * i / intervals; }
};

inline Grid build_grid(double length, int intervals) {
  if (!(length > 0.0))
    throw ValidationError("grid length must be positive");
  if (intervals < 4)
    throw ValidationError("grid needs at least 4 intervals, got " +
                          std::to_string(intervals));
  return Grid{length, intervals};
}

}  // namespace vhrd

#endif
