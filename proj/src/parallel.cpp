#include "splinaf/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace splinaf {

bool parallel_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

void for_each_index(std::size_t n, int threads, bool parallel,
                    const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
  if (parallel) {
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)threads;
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace splinaf
