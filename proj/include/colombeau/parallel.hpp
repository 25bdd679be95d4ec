#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace colombeau {

// Run fn(i) for i in [0, n) on at most `jobs` threads (jobs <= 1 or a single
// item runs inline). Work is strided, so callers index into pre-sized result
// slots and assembly stays order-preserving. fn must not throw across the
// thread boundary; callers capture errors into their result slots.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int want = std::min(jobs, hw > 0 ? hw : jobs);
    if (n <= 1 || want <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(want), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace colombeau
