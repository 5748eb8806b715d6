#ifndef CALLCAST_PARALLEL_HPP
#define CALLCAST_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <utility>

namespace callcast {

// Indexed loop over independent iterations. With `parallel` set and an
// OpenMP build, iterations are distributed over threads; otherwise the
// serial reference path runs. Results must be written to per-index slots
// so both paths produce identical output.
template <class F>
void parallel_for(std::size_t n, bool parallel, F&& body) {
#ifdef _OPENMP
    if (parallel) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace callcast

#endif
