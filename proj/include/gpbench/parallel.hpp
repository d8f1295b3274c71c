#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpbench {

int hardware_workers();

// Index-parallel map over [0, n). Each item may only write to its own slot,
// which makes the result identical for any worker count; the serial path is
// the reference the OpenMP path is tested against.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& body) {
#ifdef _OPENMP
    if (workers > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i)
        body(i);
}

// 0 means "auto" (hardware thread count).
inline int resolve_workers(int requested) {
    return requested > 0 ? requested : hardware_workers();
}

} // namespace gpbench
