#pragma once

#include <cstddef>
#include <functional>

namespace tracepoly {

// TRACEPOLY_THREADS if set and positive, else hardware concurrency.
int configured_threads();

// Calls fn(i) for i in [0, n) using up to `threads` workers (<= 0: default).
// Work is handed out dynamically; fn must be safe to run concurrently.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace tracepoly
