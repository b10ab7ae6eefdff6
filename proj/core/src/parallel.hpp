#pragma once

#include <cstddef>
#include <functional>

namespace uqcov::detail {

// UQCOV_THREADS if set to a positive integer, hardware concurrency otherwise.
unsigned default_worker_count();

// Calls fn(b) for every block b in [0, n_blocks) on up to `workers` threads.
// If several blocks throw, the exception of the lowest block index is rethrown.
void parallel_for_blocks(std::size_t n_blocks, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace uqcov::detail
