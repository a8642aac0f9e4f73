#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wfa {

enum class ExecMode { serial, parallel };

// Runs fn(i) for i in [0,count). Iterations must be independent and write
// only to their own slots; results are then bit-identical across modes and
// thread counts. Exceptions are captured and rethrown after the loop.
template <class F>
void for_each_index(std::size_t count, ExecMode mode, F&& fn) {
#ifdef _OPENMP
    if (mode == ExecMode::parallel && count > 1) {
        std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(wfa_for_each_index_error)
                if (!eptr) eptr = std::current_exception();
            }
        }
        if (eptr) std::rethrow_exception(eptr);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace wfa
