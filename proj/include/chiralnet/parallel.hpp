#pragma once

#include <cstddef>
#include <functional>

namespace chiralnet {

/// Work items across this project (sweep points, Monte-Carlo samples,
/// optimizer starts, grid cells) are independent; bodies write results by
/// index into preallocated storage, so the schedule never affects output.

int hardware_workers();
bool openmp_enabled();

/// Serial reference loop. parallel_for must produce identical results.
void serial_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// OpenMP-backed loop over [0, n). workers <= 0 uses all hardware
/// threads, workers == 1 (or a serial build) falls back to serial_for.
/// The first exception thrown by a body is rethrown after the loop.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& body);

} // namespace chiralnet
