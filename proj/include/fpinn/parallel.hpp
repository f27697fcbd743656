#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fpinn {

/// Process-wide worker count. 0 means "use hardware concurrency".
void set_thread_count(int n);
int thread_count();

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. Chunk boundaries do not depend on the worker count, so callers can
// obtain deterministic results by reducing per-chunk outputs in chunk order.
void parallel_for_chunks(std::size_t total, std::size_t chunk_size,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t total, std::size_t chunk_size) {
  return (total + chunk_size - 1) / chunk_size;
}

}  // namespace fpinn
