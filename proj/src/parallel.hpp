#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blockpu::detail {

inline int worker_count(bool parallel, int requested)
{
#ifdef _OPENMP
    if (!parallel) return 1;
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)parallel;
    (void)requested;
    return 1;
#endif
}

/// Runs body(i) for i in [begin, end). With one worker this is a plain loop in index order,
/// which is the serial reference path. The first exception (lowest index) is rethrown.
template <class Body>
void for_each_index(std::size_t begin, std::size_t end, int workers, Body&& body)
{
    if (end <= begin) return;
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(end - begin);
    const auto n = static_cast<std::ptrdiff_t>(end - begin);
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        try {
            body(begin + static_cast<std::size_t>(t));
        } catch (...) {
            errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace blockpu::detail
