// Parallel-for over independent items with a serial reference path.
//
// The serial path is the reference implementation used by tests; the OpenMP
// path must be bit-identical on every loop in this codebase (items are pure
// and write only their own slots). benchmarks/kernel_bench.cpp compares the
// two for throughput.

#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mahoraga::par {

enum class Exec { Serial, OpenMp };

inline Exec& default_exec_ref() {
#ifdef _OPENMP
    static Exec mode = Exec::OpenMp;
#else
    static Exec mode = Exec::Serial;
#endif
    return mode;
}

inline Exec default_exec() { return default_exec_ref(); }
inline void set_default_exec(Exec mode) { default_exec_ref() = mode; }

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class F>
void for_index(std::size_t n, F&& f, Exec exec) {
#ifdef _OPENMP
    if (exec == Exec::OpenMp && n > 1) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            f(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) f(i);
}

template <class F>
void for_index(std::size_t n, F&& f) {
    for_index(n, static_cast<F&&>(f), default_exec());
}

}  // namespace mahoraga::par
