#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace srtl {

namespace detail {
inline std::atomic<int>& thread_setting() {
    static std::atomic<int> n{0};
    return n;
}
}  // namespace detail

// 0 means "use hardware concurrency".
inline void set_thread_count(int n) { detail::thread_setting() = std::max(0, n); }

inline int thread_count() {
    int n = detail::thread_setting();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [begin, end). Each index is handled by exactly one
// worker, so callers writing to disjoint slots get deterministic output
// regardless of the thread count. The first exception is rethrown.
template <class Fn>
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end, Fn&& fn) {
    const std::ptrdiff_t n = end - begin;
    if (n <= 0) return;
    const int workers = static_cast<int>(std::min<std::ptrdiff_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::ptrdiff_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<std::ptrdiff_t> next{begin};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            std::ptrdiff_t i = next.fetch_add(1);
            if (i >= end) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = end;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace srtl
