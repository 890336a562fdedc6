#ifndef VHRD_PARALLEL_HPP
#define VHRD_PARALLEL_HPP

#include <functional>

namespace vhrd {

// Runs body(0..count-1) across a worker pool. workers = 0 selects the serial
// reference path, workers < 0 the OpenMP default team size. Bodies must not
// throw; batch drivers record per-item failures in their result slots.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

// Worker count from the VHRD_WORKERS environment variable, or fallback.
int workers_from_env(int fallback);

}  // namespace vhrd

#endif
