#pragma once

// Thin OpenMP shim. Kernels use `#pragma omp` directly; these helpers only
// exist so callers can query or pin the thread count without including
// <omp.h> themselves.

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace wprs::parallel {

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#if defined(_OPENMP)
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace wprs::parallel
