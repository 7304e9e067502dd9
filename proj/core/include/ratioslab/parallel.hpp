#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ratioslab {

// Global worker-pool size.  0 means "use hardware_concurrency".
void set_thread_count(int n);
int thread_count();

// Runs f(chunk_begin, chunk_end) over [0, n) split into a FIXED number of
// chunks that does not depend on the thread count.  Each chunk is computed
// independently, so any partial results a caller collects per chunk and
// combines in chunk order are bit-identical for every --threads setting.
void parallel_chunks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t, int)>& f,
                     int chunk_count = 0);

// Map-reduce helper: evaluates map(i) for i in [0, n), double-valued, and
// combines per-chunk Kahan partials in ascending chunk order.
double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)>& map);

}  // namespace ratioslab
