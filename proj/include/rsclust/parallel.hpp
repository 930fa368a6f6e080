#ifndef RSCLUST_PARALLEL_HPP
#define RSCLUST_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsclust::par {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n >= 1) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

inline int thread_id() {
#ifdef _OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

}  // namespace rsclust::par

#endif  // RSCLUST_PARALLEL_HPP
