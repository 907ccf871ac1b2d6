#pragma once

#include <functional>

namespace ctqw {

/// Process bound on data-parallel loops. 0 = hardware concurrency.
void set_worker_count(int count);
int worker_count();

/// Runs fn(i) for i in [0, n) across worker threads. Static contiguous
/// split; callers own result ordering by writing to index i, so output is
/// deterministic regardless of the worker count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace ctqw
