#pragma once

#include <cstddef>
#include <functional>

namespace activemars {

/// Worker count from ACTIVEMARS_THREADS, else hardware concurrency (>= 1).
unsigned default_thread_count();

/// Run body(i) for i in [0, n) on up to `threads` threads (0 = default).
/// Indices are split into contiguous blocks; body must only write state owned
/// by its index, which keeps results independent of the thread count.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace activemars
