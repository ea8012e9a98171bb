#include "diracuc/kernels.hpp"

#include <omp.h>

#include <exception>
#include <limits>

namespace diracuc::omp {

std::vector<double> evaluate(std::size_t n, const PointFn& fn) {
    std::vector<double> out(n);
    std::exception_ptr first;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
    const auto count = static_cast<long long>(n);

#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(diracuc_sweep_error)
            if (static_cast<std::size_t>(i) < first_index) {
                first_index = static_cast<std::size_t>(i);
                first = std::current_exception();
            }
        }
    }
    if (first) std::rethrow_exception(first);
    return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace diracuc::omp
