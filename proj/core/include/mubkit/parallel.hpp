#pragma once

#include <cstddef>
#include <functional>

namespace mubkit {

/// Number of worker threads used by parallel loops. 0 means "resolve to
/// hardware concurrency". Initialized from the MUBKIT_THREADS environment
/// variable when set.
int thread_budget();
void set_thread_budget(int n);

/// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
/// Chunk boundaries depend only on n and chunk_size, never on the thread
/// count, so per-chunk partial results can be combined in chunk order to give
/// results that are bit-identical for any --threads setting.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)> &fn);

}  // namespace mubkit
