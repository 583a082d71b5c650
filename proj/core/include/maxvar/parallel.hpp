#pragma once

#include <cstddef>
#include <functional>

namespace maxvar {

/// Number of worker threads: MAXVAR_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Work is
/// handed out by index, so results written to slot i do not depend on the
/// thread count. If any call throws, the exception from the lowest index is
/// rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace maxvar
