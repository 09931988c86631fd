#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace pnls::detail {

// Runs f(i) for i in [begin, end) with a static interleaved schedule. Each index is
// handled by exactly one thread, so per-index results do not depend on the thread count.
template <class F>
void parallel_for(int begin, int end, int threads, F&& f) {
    const int n = end - begin;
    if (n <= 0) return;
    threads = std::clamp(threads, 1, n);
    if (threads == 1) {
        for (int i = begin; i < end; ++i) f(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = begin + w; i < end; i += threads) f(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace pnls::detail
