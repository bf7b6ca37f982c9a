#pragma once
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jigsaw {

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(i) for every i in [0, count). jobs <= 1 takes the plain serial
// loop, which is also the reference path the parallel lane is tested against.
// fn must only write to per-index slots so the outcome is schedule-independent.
template <class F>
void parallel_for(int64_t count, int jobs, F&& fn) {
#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
#endif
  for (int64_t i = 0; i < count; ++i) fn(i);
}

}  // namespace jigsaw
