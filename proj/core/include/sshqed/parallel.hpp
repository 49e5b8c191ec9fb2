// parallel.hpp: deterministic fan-out over independent grid points.

#pragma once

#include <cstddef>
#include <functional>

namespace sshqed {

// Worker count: SSHQED_THREADS when set to a positive integer, otherwise the
// machine's hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once; the
// caller writes results into per-index slots so output never depends on
// scheduling. If several indices throw, the exception from the lowest index
// is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = 0);

}  // namespace sshqed
