#pragma once

#include <cstddef>
#include <functional>

namespace sram {

// Runs fn(i) for i in [0, n) on up to n_threads workers pulling indices from
// a shared atomic counter. fn must only write to per-index state; with that
// discipline results are independent of the thread count. Exceptions from
// workers are captured and the first one is rethrown on the caller.
void parallel_for(std::size_t n, unsigned n_threads,
                  const std::function<void(std::size_t)>& fn);

unsigned hardware_threads();

}
