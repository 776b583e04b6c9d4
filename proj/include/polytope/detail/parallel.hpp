#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace polytope::detail {

/// Run fn(i) for i in [0, n) on up to `threads` workers (0 = hardware count).
/// Tasks must be independent; callers make output deterministic by writing
/// into index i of a pre-sized buffer.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    if (n == 0) return;
    unsigned nt = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (nt < 1) nt = 1;
    if (nt == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace polytope::detail
