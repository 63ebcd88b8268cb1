#pragma once

#include <cstddef>
#include <functional>

namespace cfm {

/// Worker count: CFM_THREADS if set (clamped to [1, 64]), otherwise the
/// hardware concurrency.
int resolve_thread_count();

/// Runs f(i) for i in [0, n) on `threads` workers with a static stride
/// partition. Each index is processed exactly once, so writes to
/// per-index slots give output identical to a sequential loop. The first
/// exception (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f,
                  int threads = 0);

}  // namespace cfm
