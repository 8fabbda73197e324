#pragma once

#include <cstddef>
#include <functional>

namespace mimod2d {

/// Runs task(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Tasks must write only to their own output slots. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task);

/// Worker count actually used for a request of `threads`.
int resolve_threads(int threads);

}  // namespace mimod2d
