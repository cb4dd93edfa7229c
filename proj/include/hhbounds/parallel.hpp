#pragma once

#include <cstddef>
#include <functional>

namespace hhb {

/// Worker count from HH_BOUNDS_THREADS, else hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
///
/// Indices are split into contiguous blocks. Callers write results into
/// per-index slots and reduce them afterwards in index order, so the outcome
/// does not depend on the thread count. The first exception thrown by any
/// body is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hhb
