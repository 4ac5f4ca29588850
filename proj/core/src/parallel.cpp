#include "mubkit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mubkit {

namespace {

std::atomic<int> g_thread_budget{[] {
    if (const char *env = std::getenv("MUBKIT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 0) return v;
    }
    return 0;
}()};

int resolved_budget() {
    int n = g_thread_budget.load();
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

}  // namespace

int thread_budget() { return g_thread_budget.load(); }

void set_thread_budget(int n) { g_thread_budget.store(n < 0 ? 0 : n); }

void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)> &fn) {
    if (n == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t nchunks = (n + chunk_size - 1) / chunk_size;
    const int workers = static_cast<int>(
        std::min<std::size_t>(nchunks, static_cast<std::size_t>(resolved_budget())));

    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * chunk_size;
        const std::size_t end = std::min(n, begin + chunk_size);
        fn(c, begin, end);
    };

    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                run_chunk(c);
            }
        });
    }
    for (auto &t : pool) t.join();
}

}  // namespace mubkit
