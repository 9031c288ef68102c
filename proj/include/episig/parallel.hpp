#pragma once

#include <cstddef>
#include <functional>

namespace episig {

/// Worker count: EPISIG_THREADS if set to a positive integer, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads in contiguous
/// chunks. Callers write into pre-sized slots, so results stay ordered.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace episig
