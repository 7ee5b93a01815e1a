#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gcf {

// Node loops are embarrassingly parallel: every iteration writes its own
// slot, so the result is bit-identical for any thread count. Small grids
// stay serial; the OpenMP fork is not worth it below the grain size.
inline constexpr std::ptrdiff_t parallel_grain = 2048;

template <class F>
void parallel_for(std::ptrdiff_t n, F&& body) {
#ifdef _OPENMP
    if (n >= parallel_grain) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace gcf
