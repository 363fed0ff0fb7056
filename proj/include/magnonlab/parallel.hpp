#pragma once

#include <cstddef>
#include <functional>

namespace magnonlab {

/// Worker-pool size: MAGNONLAB_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs fn(i) for i in [0, n). Work items must be independent; results are
/// deterministic because every item owns its output slot. Falls back to a
/// plain loop for small n or a single worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace magnonlab
