#pragma once

#include <cstddef>
#include <functional>

namespace nicrob {

// Worker count: `requested` if non-zero, else NICROB_THREADS, else the
// hardware concurrency (at least 1).
unsigned resolve_thread_count(unsigned requested = 0);

// Calls body(i) for every i in [0, count) from up to `threads` workers that
// pull indices from a shared counter. The first exception thrown by any
// worker is rethrown after all workers stop. Callers write results by index,
// so output order never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace nicrob
