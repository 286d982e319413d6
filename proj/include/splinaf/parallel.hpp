#pragma once

#include <cstddef>
#include <functional>

namespace splinaf {

// Runs fn(i) for every i in [0, n). With parallel=true the iterations are
// distributed over OpenMP threads; otherwise a plain loop runs them in order.
// Callers write results into per-index slots and fold them afterwards in
// index order, so the two paths produce bit-identical results. threads = 0
// leaves the OpenMP default in place.
void for_each_index(std::size_t n, int threads, bool parallel,
                    const std::function<void(std::size_t)>& fn);

// True when the library was built with OpenMP.
bool parallel_enabled();

}  // namespace splinaf
