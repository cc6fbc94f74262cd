#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fusionkit {

// Worker-thread count used by the block runner. Defaults to 1; the CLI and
// tests raise it explicitly. Outputs must not depend on this value.
inline std::atomic<int>& worker_thread_setting() {
    static std::atomic<int> n{1};
    return n;
}

inline void set_worker_threads(int n) { worker_thread_setting().store(n < 1 ? 1 : n); }
inline int worker_threads() { return worker_thread_setting().load(); }

// Runs fn(block) for every block in [0, blocks). The block partition is fixed
// by the caller, so any result keyed by block index is independent of the
// thread count and of scheduling.
template <class F>
inline void run_blocks(std::size_t blocks, F&& fn) {
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(worker_threads()), blocks);
    if (nt <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= blocks) return;
                try {
                    fn(b);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace fusionkit
