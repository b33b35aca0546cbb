#pragma once

#include <cstddef>
#include <functional>

namespace segproc {

// Worker count for replication loops.  Reads SEGPROC_THREADS each call;
// unset, empty, or 0 means one worker per hardware thread.
std::size_t worker_count();

// Static partition of [0, count) across workers.  Each index is processed
// exactly once; callers must make iteration i depend only on i (its own
// rng stream, its own output slot), so results do not depend on the worker
// count.  body may be invoked concurrently.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace segproc
