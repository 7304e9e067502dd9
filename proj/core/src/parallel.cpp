#include "ratioslab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "ratioslab/common.hpp"

namespace ratioslab {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n); }

int thread_count() {
    int n = g_threads.load();
    if (n > 0) return n;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_chunks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t, int)>& f,
                     int chunk_count) {
    if (n <= 0) return;
    // Chunk layout depends only on n, never on the thread count.
    int chunks = chunk_count > 0 ? chunk_count : 64;
    if (chunks > n) chunks = static_cast<int>(n);
    std::int64_t base = n / chunks, rem = n % chunks;

    auto chunk_range = [&](int c) {
        std::int64_t b = c * base + std::min<std::int64_t>(c, rem);
        std::int64_t e = b + base + (c < rem ? 1 : 0);
        return std::pair<std::int64_t, std::int64_t>{b, e};
    };

    int workers = std::min(thread_count(), chunks);
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) {
            auto [b, e] = chunk_range(c);
            f(b, e, c);
        }
        return;
    }

    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= chunks) break;
            auto [b, e] = chunk_range(c);
            f(b, e, c);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 0; t < workers - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

double parallel_sum(std::int64_t n, const std::function<double(std::int64_t)>& map) {
    constexpr int kChunks = 64;
    double partial[kChunks] = {0.0};
    parallel_chunks(
        n,
        [&](std::int64_t b, std::int64_t e, int c) {
            Kahan acc;
            for (std::int64_t i = b; i < e; ++i) acc.add(map(i));
            partial[c] = acc.sum;
        },
        kChunks);
    Kahan total;
    int chunks = std::min<std::int64_t>(kChunks, n);
    for (int c = 0; c < chunks; ++c) total.add(partial[c]);
    return total.sum;
}

}  // namespace ratioslab
