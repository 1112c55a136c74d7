#include "chiralnet/parallel.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chiralnet {

int hardware_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void serial_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& body) {
    if (workers == 1 || n <= 1) {
        serial_for(n, body);
        return;
    }
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(chiralnet_parallel_for_error)
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    serial_for(n, body);
#endif
}

} // namespace chiralnet
