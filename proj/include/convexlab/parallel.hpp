#pragma once

#include <cstddef>
#include <functional>

namespace convexlab {

/// Worker count: CONVEXLAB_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency().
int worker_count();

/// Calls body(i) for every i in [0, n), spread over worker_count() threads.
/// Each index is processed exactly once; results must be written to
/// per-index slots so the outcome never depends on the schedule. The first
/// exception thrown by any call is rethrown on the calling thread. Calls made
/// from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace convexlab
