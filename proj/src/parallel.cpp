#include "qamp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace qamp {

namespace {
std::atomic<int> g_max_threads{1};
}

int max_threads() { return g_max_threads.load(); }

void set_max_threads(int n) { g_max_threads.store(std::max(1, n)); }

void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& fn) {
    const int cap = g_max_threads.load();
    // Not worth spawning below this; the work per index is unknown, so the
    // threshold is only a guard against degenerate tiny loops.
    if (cap <= 1 || n < 32) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(cap), n));
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace qamp
