#pragma once

// Extended-range real and complex numbers stored in log-polar form.
//
// The radii used by the counterexample (e.g. exp(-exp(64))) and the field
// values |z|^k built on them are far below the smallest normal double, so
// every magnitude in the library is carried as a natural logarithm.

#include <compare>
#include <complex>
#include <stdexcept>
#include <string>

namespace diracuc {

/// Thrown when a logarithmic magnitude itself leaves the finite doubles.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Wrap an angle into (-pi, pi].
double normalize_angle(double x);

/// Sign / log-magnitude real. sign == 0 is exact zero and logmag is ignored.
struct ExtReal {
    int sign = 0;
    double logmag = 0.0;

    static ExtReal zero() { return {}; }
    static ExtReal from_log(double logmag, int sign = +1);
    static ExtReal from_double(double d);

    bool is_zero() const { return sign == 0; }
    double to_double() const;

    ExtReal operator-() const { return {-sign, logmag}; }
};

ExtReal operator*(const ExtReal& a, const ExtReal& b);
ExtReal operator/(const ExtReal& a, const ExtReal& b);
ExtReal operator+(const ExtReal& a, const ExtReal& b);
ExtReal operator-(const ExtReal& a, const ExtReal& b);
std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);
bool operator==(const ExtReal& a, const ExtReal& b);

/// Largest logmag gap for which the smaller addend is still accumulated.
inline constexpr double kCollapseGap = 40.0;

/// "logmag:+:-3.25" style rendering used in reports (see README).
std::string to_logmag_string(const ExtReal& x);

/// Log-polar complex number. `zero` marks exact zero.
struct ExtComplex {
    bool zero = true;
    double logmag = 0.0;
    double arg = 0.0;

    static ExtComplex from_polar(double logmag, double arg);
    static ExtComplex from_complex(std::complex<double> z);
    /// value = exp(log_scale) * mantissa
    static ExtComplex from_scaled(double log_scale, std::complex<double> mantissa);

    bool is_zero() const { return zero; }
    ExtReal abs() const { return zero ? ExtReal::zero() : ExtReal{+1, logmag}; }
    ExtComplex conj() const;

    /// This value divided by exp(log_scale), as a plain complex double.
    std::complex<double> mantissa(double log_scale) const;
    std::complex<double> to_complex() const { return mantissa(0.0); }
};

ExtComplex operator*(const ExtComplex& a, const ExtComplex& b);
ExtComplex operator+(const ExtComplex& a, const ExtComplex& b);
ExtComplex operator-(const ExtComplex& a, const ExtComplex& b);
ExtComplex pow_int(const ExtComplex& a, long k);

// Spec-facing aliases.
inline ExtReal xr_mul(const ExtReal& a, const ExtReal& b) { return a * b; }
inline ExtReal xr_add(const ExtReal& a, const ExtReal& b) { return a + b; }
inline std::strong_ordering xr_compare(const ExtReal& a, const ExtReal& b) { return a <=> b; }
inline ExtComplex xc_mul(const ExtComplex& a, const ExtComplex& b) { return a * b; }
inline ExtComplex xc_add(const ExtComplex& a, const ExtComplex& b) { return a + b; }
inline ExtComplex xc_pow_int(const ExtComplex& a, long k) { return pow_int(a, k); }

/// Sum of moduli-squared, sqrt'ed: |(a, b)| for a spinor with two components.
ExtReal hypot(const ExtComplex& a, const ExtComplex& b);

}  // namespace diracuc
