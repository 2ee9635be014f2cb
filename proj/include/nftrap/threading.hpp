#ifndef NFTRAP_THREADING_HPP
#define NFTRAP_THREADING_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nftrap {

// Dynamic-scheduling parallel loop over [begin, end). Results must be
// written to disjoint slots so the output is independent of scheduling.
inline void parallel_for(size_t begin, size_t end, int threads,
                         const std::function<void(size_t)>& body)
{
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    const size_t n = end - begin;
    if (threads <= 1 || n <= 1) {
        for (size_t i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<size_t> next(begin);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= end) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace nftrap

#endif
