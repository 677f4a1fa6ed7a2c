#pragma once

#include <cstddef>
#include <cstdint>

#if KLJNLAB_USE_OPENMP
#include <omp.h>
#endif

namespace kljnlab {

/// How a Monte Carlo kernel distributes its independent work items.
/// `threads == 0` means the OpenMP runtime default.
struct Execution {
    bool parallel = true;
    int threads = 0;

    static constexpr Execution serial() noexcept { return {false, 1}; }
    static constexpr Execution omp(int n = 0) noexcept { return {true, n}; }
};

/// Calls `body(i)` for every i in [0, n). Each call must write only to
/// slot i of its outputs; reductions happen afterwards, in index order.
template <class Body>
void parallel_for(std::size_t n, const Execution& exec, Body&& body) {
#if KLJNLAB_USE_OPENMP
    if (exec.parallel) {
        const int threads = exec.threads > 0 ? exec.threads : omp_get_max_threads();
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
        for (std::int64_t i = 0; i < count; ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
}

inline bool openmp_enabled() noexcept {
#if KLJNLAB_USE_OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace kljnlab
