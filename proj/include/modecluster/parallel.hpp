#pragma once

#include <cstddef>
#include <functional>

namespace modecluster {

// Process-wide worker cap. 0 restores the default (available cores).
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for every i in [0, n). fn must write only to per-index slots;
// under that contract results are bit-identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace modecluster
