#pragma once

// Grid sweeps. Each sweep evaluates a pure per-point function into a dense
// vector; reductions run afterwards in index order, so parallel and serial
// execution give bit-identical results.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace diracuc {

enum class Exec { serial, parallel };

using PointFn = std::function<double(std::size_t)>;

namespace serial {
std::vector<double> evaluate(std::size_t n, const PointFn& fn);
}

namespace omp {
/// Rethrows the first exception (lowest index) raised by fn.
std::vector<double> evaluate(std::size_t n, const PointFn& fn);
int max_threads();
}

std::vector<double> evaluate(std::size_t n, const PointFn& fn, Exec exec);

struct Extremum {
    double value = 0.0;
    std::size_t index = 0;
};

/// Largest entry, NaN counting as +inf; ties go to the lowest index.
/// Empty input gives {-inf, 0}.
Extremum reduce_max(std::span<const double> values);

}  // namespace diracuc
