#pragma once

#include <cstddef>
#include <functional>

namespace gridnet::detail {

/// Worker cap: min(hardware threads, GRIDNET_THREADS if set and positive).
/// Read once per process.
unsigned worker_count();

/// Runs fn(begin, end, block_index) over [0, n) split into fixed-size blocks.
/// The block grid depends only on n, never on the worker count, so callers
/// that reduce per-block results in block order get identical output for any
/// thread count.
void parallel_blocks(std::size_t n, std::size_t block_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Number of blocks parallel_blocks will use for the given n and block size.
std::size_t block_count(std::size_t n, std::size_t block_size);

} // namespace gridnet::detail
