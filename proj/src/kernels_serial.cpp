#include "diracuc/kernels.hpp"

#include <cmath>
#include <limits>

namespace diracuc {

namespace serial {

std::vector<double> evaluate(std::size_t n, const PointFn& fn) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
}

}  // namespace serial

std::vector<double> evaluate(std::size_t n, const PointFn& fn, Exec exec) {
    return exec == Exec::parallel ? omp::evaluate(n, fn) : serial::evaluate(n, fn);
}

Extremum reduce_max(std::span<const double> values) {
    Extremum best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = std::isnan(values[i]) ? std::numeric_limits<double>::infinity() : values[i];
        if (v > best.value || (i == 0 && v == best.value)) best = {v, i};
    }
    return best;
}

}  // namespace diracuc
