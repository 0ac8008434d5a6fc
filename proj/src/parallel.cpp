#include "gridnet/detail/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gridnet::detail {

unsigned worker_count() {
    static const unsigned cached = [] {
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        if (const char* env = std::getenv("GRIDNET_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v > 0 && static_cast<unsigned long>(v) < hw)
                hw = static_cast<unsigned>(v);
        }
        return hw;
    }();
    return cached;
}

std::size_t block_count(std::size_t n, std::size_t block_size) {
    if (block_size == 0) block_size = 1;
    return (n + block_size - 1) / block_size;
}

void parallel_blocks(std::size_t n, std::size_t block_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    const std::size_t blocks = block_count(n, block_size);
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(worker_count(), blocks));

    auto run_block = [&](std::size_t b) {
        const std::size_t begin = b * block_size;
        const std::size_t end = std::min(n, begin + block_size);
        fn(begin, end, b);
    };

    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t b = next.fetch_add(1);
                if (b >= blocks) return;
                run_block(b);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace gridnet::detail
