#include "diracuc/extrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace diracuc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked(double logmag, const char* what) {
    if (!std::isfinite(logmag)) {
        throw RangeError(std::string("extended-range overflow in ") + what);
    }
    return logmag;
}

}  // namespace

double normalize_angle(double x) {
    double r = std::remainder(x, kTwoPi);
    if (r <= -std::numbers::pi) r += kTwoPi;
    return r;
}

// ---------------------------------------------------------------------------
// ExtReal

ExtReal ExtReal::from_log(double logmag, int sign) {
    if (sign == 0) return zero();
    return {sign > 0 ? +1 : -1, checked(logmag, "ExtReal::from_log")};
}

ExtReal ExtReal::from_double(double d) {
    if (d == 0.0) return zero();
    if (!std::isfinite(d)) throw RangeError("ExtReal::from_double: non-finite input");
    return {d > 0 ? +1 : -1, std::log(std::abs(d))};
}

double ExtReal::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    if (a.is_zero() || b.is_zero()) return ExtReal::zero();
    return {a.sign * b.sign, checked(a.logmag + b.logmag, "xr_mul")};
}

ExtReal operator/(const ExtReal& a, const ExtReal& b) {
    if (b.is_zero()) throw RangeError("xr_div: division by zero");
    if (a.is_zero()) return ExtReal::zero();
    return {a.sign * b.sign, checked(a.logmag - b.logmag, "xr_div")};
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ExtReal& big = a.logmag >= b.logmag ? a : b;
    const ExtReal& small = a.logmag >= b.logmag ? b : a;
    const double gap = big.logmag - small.logmag;
    if (gap > kCollapseGap) return big;
    if (big.sign == small.sign) {
        return {big.sign, checked(big.logmag + std::log1p(std::exp(-gap)), "xr_add")};
    }
    if (gap == 0.0) return ExtReal::zero();
    return {big.sign, checked(big.logmag + std::log(-std::expm1(-gap)), "xr_add")};
}

ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (a.sign != b.sign) return a.sign <=> b.sign;
    if (a.sign == 0) return std::strong_ordering::equal;
    // Logmags are finite, so the partial order on doubles is total here.
    auto by_mag = a.logmag < b.logmag   ? std::strong_ordering::less
                  : a.logmag > b.logmag ? std::strong_ordering::greater
                                        : std::strong_ordering::equal;
    if (a.sign > 0) return by_mag;
    return 0 <=> by_mag;
}

bool operator==(const ExtReal& a, const ExtReal& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

std::string to_logmag_string(const ExtReal& x) {
    if (x.is_zero()) return "logmag:0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "logmag:%c:%.15g", x.sign > 0 ? '+' : '-', x.logmag);
    return buf;
}

// ---------------------------------------------------------------------------
// ExtComplex

ExtComplex ExtComplex::from_polar(double logmag, double arg) {
    return {false, checked(logmag, "ExtComplex::from_polar"), normalize_angle(arg)};
}

ExtComplex ExtComplex::from_complex(std::complex<double> z) { return from_scaled(0.0, z); }

ExtComplex ExtComplex::from_scaled(double log_scale, std::complex<double> mantissa) {
    if (mantissa == std::complex<double>(0.0, 0.0)) return {};
    return {false, checked(log_scale + std::log(std::abs(mantissa)), "ExtComplex::from_scaled"),
            normalize_angle(std::arg(mantissa))};
}

ExtComplex ExtComplex::conj() const {
    if (zero) return {};
    return {false, logmag, normalize_angle(-arg)};
}

std::complex<double> ExtComplex::mantissa(double log_scale) const {
    if (zero) return {0.0, 0.0};
    return std::polar(std::exp(logmag - log_scale), arg);
}

ExtComplex operator*(const ExtComplex& a, const ExtComplex& b) {
    if (a.zero || b.zero) return {};
    return {false, checked(a.logmag + b.logmag, "xc_mul"), normalize_angle(a.arg + b.arg)};
}

ExtComplex operator+(const ExtComplex& a, const ExtComplex& b) {
    if (a.zero) return b;
    if (b.zero) return a;
    const ExtComplex& big = a.logmag >= b.logmag ? a : b;
    const ExtComplex& small = a.logmag >= b.logmag ? b : a;
    const double gap = big.logmag - small.logmag;
    if (gap > kCollapseGap) return big;
    // big * (1 + w), |w| <= 1
    const double w = std::exp(-gap);
    const double phi = small.arg - big.arg;
    const double re = 1.0 + w * std::cos(phi);
    const double im = w * std::sin(phi);
    if (re == 0.0 && im == 0.0) return {};
    // log|1+w| = 0.5 * log1p(2 w cos(phi) + w^2) keeps accuracy for small w;
    // near cancellation the direct modulus is better conditioned.
    const double q = w * (2.0 * std::cos(phi) + w);
    const double log_abs = q > -0.5 ? 0.5 * std::log1p(q) : std::log(std::hypot(re, im));
    return {false, checked(big.logmag + log_abs, "xc_add"),
            normalize_angle(big.arg + std::atan2(im, re))};
}

ExtComplex operator-(const ExtComplex& a, const ExtComplex& b) {
    if (b.zero) return a;
    if (!a.zero && a.logmag == b.logmag && a.arg == b.arg) return {};
    return a + ExtComplex{false, b.logmag, normalize_angle(b.arg + std::numbers::pi)};
}

ExtComplex pow_int(const ExtComplex& a, long k) {
    if (k == 0) return ExtComplex::from_polar(0.0, 0.0);
    if (a.zero) {
        if (k < 0) throw RangeError("xc_pow_int: negative power of zero");
        return {};
    }
    const double kk = static_cast<double>(k);
    return {false, checked(kk * a.logmag, "xc_pow_int"), normalize_angle(kk * a.arg)};
}

ExtReal hypot(const ExtComplex& a, const ExtComplex& b) {
    if (a.zero && b.zero) return ExtReal::zero();
    if (a.zero) return b.abs();
    if (b.zero) return a.abs();
    const double top = std::max(a.logmag, b.logmag);
    const double ra = std::exp(2.0 * (a.logmag - top));
    const double rb = std::exp(2.0 * (b.logmag - top));
    return {+1, checked(top + 0.5 * std::log(ra + rb), "hypot")};
}

}  // namespace diracuc
