#pragma once

#define GREENLAB_PRAGMA(x) _Pragma(#x)

#ifdef GREENLAB_HAS_OPENMP
#include <omp.h>
#define GREENLAB_OMP_PARALLEL_FOR GREENLAB_PRAGMA(omp parallel for schedule(static))
#define GREENLAB_OMP_PARALLEL_FOR_DYNAMIC GREENLAB_PRAGMA(omp parallel for schedule(dynamic))
#define GREENLAB_OMP_FOR_DYNAMIC_IF(cond) GREENLAB_PRAGMA(omp parallel for schedule(dynamic) if(cond))
#define GREENLAB_OMP_FOR_IF(cond) GREENLAB_PRAGMA(omp parallel for schedule(static) if(cond))
#else
#define GREENLAB_OMP_PARALLEL_FOR
#define GREENLAB_OMP_PARALLEL_FOR_DYNAMIC
#define GREENLAB_OMP_FOR_DYNAMIC_IF(cond)
#define GREENLAB_OMP_FOR_IF(cond)
#endif

namespace greenlab {

/// Which implementation of a data-parallel kernel to run. The serial
/// kernels are the reference the OpenMP kernels are tested against.
enum class Backend { Serial, OpenMP };

inline int max_threads() {
#ifdef GREENLAB_HAS_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace greenlab
