#pragma once

#include <cstddef>
#include <functional>

namespace permsim {

/// Default worker count: PERMSIM_THREADS if set and positive, else 1.
int default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; callers write results to per-index slots so output is
/// independent of scheduling. The first exception thrown by a worker is
/// rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &body);

} // namespace permsim
