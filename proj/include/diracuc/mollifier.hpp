#pragma once

#include <stdexcept>

namespace diracuc {

/// Quadrature did not reach the requested accuracy.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Largest admissible cutoff parameter for a given epsilon:
/// min(0.24, 0.99 * (sqrt(1 + 4 eps) - 1) / 2), so that delta^2 + delta < eps.
double select_delta(double epsilon);

/// Smooth monotone cutoff chi on the real line.
///
/// A ramp of slope (1 + delta) between s = a and s = 1 - a, with
/// a = delta / (2 (1 + delta)), mollified by the even bump
/// exp(-1 / (1 - x^2)) rescaled to radius a / 4. The resulting chi
///   - is 0 for s <= 0 and 1 for s >= 1, nondecreasing in between,
///   - has sup chi' = chi'(1/2) = 1 + delta,
///   - satisfies chi(s) <= s on [0, 1/2], chi(1/2) = 1/2 and
///     chi(s) <= (1 + delta) s - delta / 2 on [1/2, 1].
///
/// Evaluations are pure; one profile can be shared between threads.
class CutoffProfile {
public:
    explicit CutoffProfile(double delta);

    double delta() const { return delta_; }
    double plateau() const { return plateau_; }
    double bump_radius() const { return bump_radius_; }
    /// Integral of the unnormalized bump over (-1, 1).
    double normalization() const { return norm_; }

    double value(double s) const;
    double derivative(double s) const;
    /// chi'' is the rescaled bump itself, so it has a closed form.
    double second_derivative(double s) const;

    /// chi(s + ds) - chi(s), accurate even when ds is far below ulp(s).
    double increment(double s, double ds) const;

    double operator()(double s) const { return value(s); }

private:
    double bump_cdf(double x) const;       // int_{-1}^{x} bump
    double bump_moment(double x) const;    // int_{-1}^{x} (x - y) bump(y) dy

    double delta_;
    double plateau_;
    double bump_radius_;
    double norm_;
};

inline double chi(const CutoffProfile& p, double s) { return p.value(s); }
inline double chi_prime(const CutoffProfile& p, double s) { return p.derivative(s); }

}  // namespace diracuc
