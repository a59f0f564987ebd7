#pragma once

#include <omp.h>

namespace cortex::detail {

/// 0 or negative means "whatever the OpenMP runtime would pick".
inline int resolve_workers(int requested) {
    return requested > 0 ? requested : omp_get_max_threads();
}

}  // namespace cortex::detail
