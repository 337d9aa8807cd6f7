#pragma once

#include <cstddef>
#include <functional>

namespace tdneat {

// 0 (or negative) means one worker per hardware thread.
int resolve_thread_count(int requested);

// Requested evaluation parallelism from TDNEAT_THREADS; unset, empty or
// unparsable values mean auto (0).
int thread_count_from_env();

// Static index partition over [0, n).  fn must not touch shared mutable
// state; results must be written to slot i only, so the outcome is identical
// for every worker count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace tdneat
