#pragma once

#include <cstdint>
#include <functional>

namespace wradon {

/// Global worker-thread cap shared by all parallel loops.
/// 0 means "use hardware concurrency". Set once at startup (CLI --threads
/// or WRADON_THREADS); reads are cheap and lock-free.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [begin, end), split into contiguous chunks across
/// workers. The chunk layout depends only on the range and the thread cap,
/// so per-chunk accumulation order is deterministic for a fixed cap.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& chunk_body);

} // namespace wradon
