#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fock_smirnov {

/// Thread cap from FOCK_SMIRNOV_THREADS; 1 when unset or unparsable.
inline unsigned thread_cap() {
    const char* env = std::getenv("FOCK_SMIRNOV_THREADS");
    if (env == nullptr) return 1;
    try {
        const long v = std::stol(env);
        return v < 1 ? 1u : static_cast<unsigned>(std::min<long>(v, 256));
    } catch (...) {
        return 1;
    }
}

/// Runs body(i) for i in [0, n). Each index is handled by exactly one thread,
/// so callers writing only to slot i get results independent of the thread count.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t threads = std::min<std::size_t>(thread_cap(), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fock_smirnov
