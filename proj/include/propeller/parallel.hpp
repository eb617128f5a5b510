#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace propeller {

/// Execution policy for the sample-evaluation kernels. Parallel runs use
/// OpenMP with a static schedule and write results by index, so both
/// policies produce bit-identical output; serial is the reference path.
enum class Exec { serial, parallel };

/// f(i) must not let exceptions escape (OpenMP would terminate).
template <typename F>
void for_each_index(int n, Exec policy, F&& f) {
#ifdef _OPENMP
    if (policy == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
#else
    (void)policy;
#endif
    for (int i = 0; i < n; ++i) f(i);
}

}  // namespace propeller
