#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cathom {

// thread count for parallel kernels; CATHOM_THREADS overrides the OpenMP default
inline int thread_budget() {
  static int n = [] {
    if (const char* e = std::getenv("CATHOM_THREADS")) {
      int v = std::atoi(e);
      if (v > 0) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return n;
}

}  // namespace cathom
