#include "diracuc/mollifier.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace diracuc;

namespace {

const std::vector<double> kDeltas = {0.01, 0.09, 0.2, 0.24};

double raw_bump(double y) { return std::abs(y) < 1.0 ? std::exp(-1.0 / (1.0 - y * y)) : 0.0; }

// Direct convolution of the clamped ramp with the normalized bump.
struct ConvolutionOracle {
    double delta, a, r, z;
    boost::math::quadrature::tanh_sinh<double> rule;

    explicit ConvolutionOracle(double d) : delta(d), a(d / (2 * (1 + d))), r(a / 4) {
        z = rule.integrate(raw_bump, -1.0, 1.0, 1e-15);
    }

    double ramp(double s) const { return std::clamp((1 + delta) * (s - a), 0.0, 1.0); }
    double ramp_slope(double s) const { return (s > a && s < 1 - a) ? 1 + delta : 0.0; }

    template <class F>
    double convolve(F&& f, double s) {
        std::vector<double> cuts = {-r};
        for (double k : {s - a, s - (1 - a)}) {
            if (k > -r && k < r) cuts.push_back(k);
        }
        cuts.push_back(r);
        std::sort(cuts.begin(), cuts.end());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] <= 0.0) continue;
            acc += rule.integrate([&](double y) { return f(s - y) * raw_bump(y / r); }, cuts[i], cuts[i + 1], 1e-14);
        }
        return acc / (r * z);
    }

    double value(double s) { return convolve([this](double x) { return ramp(x); }, s); }
    double derivative(double s) { return convolve([this](double x) { return ramp_slope(x); }, s); }
};

double fd4(const CutoffProfile& p, double s, double h) {
    return (8.0 * (p(s + h) - p(s - h)) - (p(s + 2 * h) - p(s - 2 * h))) / (12.0 * h);
}

}  // namespace

TEST_CASE("select_delta examples") {
    const double d = select_delta(0.1);
    CHECK(d == doctest::Approx(0.99 * 0.5 * (std::sqrt(1.4) - 1)).epsilon(1e-15));
    CHECK(d == doctest::Approx(0.0907).epsilon(1e-3));
    CHECK(d * d + d < 0.1);
    CHECK(d * d + d == doctest::Approx(0.0989).epsilon(1e-3));

    CHECK(select_delta(10.0) == 0.24);

    double prev = select_delta(1e-1);
    for (double eps = 5e-2; eps > 1e-12; eps /= 2) {
        const double cur = select_delta(eps);
        REQUIRE(cur < prev);
        REQUIRE(cur > 0.0);
        REQUIRE(cur * cur + cur < eps);
        prev = cur;
    }
    CHECK(prev < 1e-11);
    CHECK_THROWS_AS(select_delta(0.0), std::invalid_argument);
}

TEST_CASE("profile construction") {
    const CutoffProfile p(0.1);
    CHECK(p.plateau() == doctest::Approx(0.1 / 2.2));
    CHECK(p.bump_radius() == doctest::Approx(p.plateau() / 4));
    CHECK(p.bump_radius() < p.plateau());
    for (double bad : {0.0, -0.1, 0.25, 0.3}) CHECK_THROWS_AS(CutoffProfile{bad}, std::invalid_argument);
}

TEST_CASE("chi and chi' examples") {
    for (double d : kDeltas) {
        const CutoffProfile p(d);
        CHECK(chi(p, -1.0) == 0.0);
        CHECK(chi(p, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(chi(p, 2.0) == 1.0);
        CHECK(chi_prime(p, 0.5) == doctest::Approx(1 + d).epsilon(1e-15));
        CHECK(chi_prime(p, -0.1) == 0.0);
    }
}

TEST_CASE("shape properties on a dense grid") {
    for (double d : kDeltas) {
        CAPTURE(d);
        const CutoffProfile p(d);
        const int n = 10000;
        double sup_slope = 0.0;
        double prev = -1.0;
        bool ok = true;
        for (int i = 0; i <= n; ++i) {
            const double s = -0.2 + 1.4 * i / n;
            const double v = p(s);
            const double dv = p.derivative(s);
            sup_slope = std::max(sup_slope, dv);
            if (s <= 0.0) ok &= v == 0.0 && dv == 0.0;
            if (s >= 1.0) ok &= v == 1.0 && dv == 0.0;
            ok &= v >= -1e-12 && v <= 1.0 + 1e-12;
            ok &= dv >= -1e-12;
            ok &= v >= prev - 1e-12;
            if (s >= 0.0 && s <= 0.5) ok &= v <= s + 1e-12;
            if (s >= 0.5 && s <= 1.0) ok &= v <= (1 + d) * s - d / 2 + 1e-12;
            prev = v;
        }
        CHECK(ok);
        CHECK(std::abs(sup_slope - (1 + d)) <= 1e-10);
    }
}

TEST_CASE("chi matches a direct convolution oracle") {
    std::mt19937_64 rng(23);
    for (double d : kDeltas) {
        CAPTURE(d);
        const CutoffProfile p(d);
        ConvolutionOracle oracle(d);
        std::uniform_real_distribution<double> near_lo(oracle.a - oracle.r, oracle.a + oracle.r);
        std::uniform_real_distribution<double> near_hi(1 - oracle.a - oracle.r, 1 - oracle.a + oracle.r);
        std::uniform_real_distribution<double> anywhere(-0.1, 1.1);
        double worst_v = 0.0;
        double worst_d = 0.0;
        for (int i = 0; i < 60; ++i) {
            const double s = i % 3 == 0 ? near_lo(rng) : i % 3 == 1 ? near_hi(rng) : anywhere(rng);
            worst_v = std::max(worst_v, std::abs(p(s) - oracle.value(s)));
            worst_d = std::max(worst_d, std::abs(p.derivative(s) - oracle.derivative(s)));
        }
        CHECK(worst_v <= 1e-12);
        CHECK(worst_d <= 1e-11);
    }
}

TEST_CASE("finite differences of chi match chi'") {
    std::mt19937_64 rng(29);
    for (double d : kDeltas) {
        CAPTURE(d);
        const CutoffProfile p(d);
        const double a = p.plateau();
        const double r = p.bump_radius();
        std::uniform_real_distribution<double> window(a - r, a + r);
        std::uniform_real_distribution<double> anywhere(-0.1, 1.1);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double s = i % 2 ? window(rng) : anywhere(rng);
            const double exact = p.derivative(s);
            worst = std::max(worst, std::abs(fd4(p, s, 1e-3 * r) - exact) / std::max(1.0, std::abs(exact)));
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("second derivative and increment") {
    const CutoffProfile p(0.09);
    const double a = p.plateau();
    const double r = p.bump_radius();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> window(a - r, a + r);
    double worst2 = 0.0;
    double worst_inc = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double s = window(rng);
        const double h = 1e-3 * r;
        const double fd = (8.0 * (p.derivative(s + h) - p.derivative(s - h)) -
                          (p.derivative(s + 2 * h) - p.derivative(s - 2 * h))) /
                         (12.0 * h);
        worst2 = std::max(worst2, std::abs(fd - p.second_derivative(s)) / std::max(1.0, std::abs(p.second_derivative(s))));

        const double big = 1e-3 * r;
        worst_inc = std::max(worst_inc, std::abs(p.increment(s, big) - (p(s + big) - p(s))));
        const double tiny = 1e-9;
        const double taylor = p.increment(s, tiny);
        worst_inc = std::max(worst_inc, std::abs(taylor - (p(s + tiny) - p(s))));
    }
    CHECK(worst2 <= 1e-6);
    CHECK(worst_inc <= 1e-13);
    CHECK(p.second_derivative(0.5) == 0.0);
    CHECK(p.second_derivative(1 - a) < 0.0);
}
