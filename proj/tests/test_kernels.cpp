#include "diracuc/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace diracuc;

TEST_CASE("serial and parallel sweeps are bit-identical") {
    const PointFn fn = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)) * std::exp(-1e-5 * i); };
    for (std::size_t n : {0u, 1u, 17u, 10007u}) {
        const auto a = serial::evaluate(n, fn);
        const auto b = omp::evaluate(n, fn);
        REQUIRE(a.size() == n);
        CHECK(a == b);
        CHECK(evaluate(n, fn, Exec::serial) == evaluate(n, fn, Exec::parallel));
    }
    CHECK(omp::max_threads() >= 1);
}

TEST_CASE("the lowest failing index is rethrown") {
    const PointFn fn = [](std::size_t i) -> double {
        if (i % 1000 == 999) throw std::runtime_error("bad " + std::to_string(i));
        return 1.0;
    };
    for (Exec e : {Exec::serial, Exec::parallel}) {
        try {
            evaluate(5000, fn, e);
            FAIL("no exception");
        } catch (const std::runtime_error& err) {
            CHECK(std::string(err.what()) == "bad 999");
        }
    }
}

TEST_CASE("reduce_max") {
    const std::vector<double> v = {1.0, 3.0, 2.0, 3.0};
    const Extremum e = reduce_max(v);
    CHECK(e.value == 3.0);
    CHECK(e.index == 1);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> w = {1.0, nan, 5.0};
    const Extremum en = reduce_max(w);
    CHECK(en.value == std::numeric_limits<double>::infinity());
    CHECK(en.index == 1);

    const Extremum empty = reduce_max(std::span<const double>{});
    CHECK(empty.value == -std::numeric_limits<double>::infinity());
}
