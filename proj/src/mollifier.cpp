#include "diracuc/mollifier.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace diracuc {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;

// Panel results below this disagreement count as converged.
constexpr double kQuadratureTol = 1e-12;

double bump(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - y * y));
}

double bump_integral() {
    static const double z = [] {
        double err = 0.0;
        const double v = Rule::integrate(bump, -1.0, 1.0, 15, 1e-15, &err);
        return v;
    }();
    return z;
}

// Fixed-node rule on [-1, x]: one 61-point panel vs. two. Fixed nodes keep the
// result a smooth function of x, which the finite-difference checks rely on.
template <class F>
double fixed_integral(F&& f, double x) {
    const double mid = 0.5 * (x - 1.0);
    const double one = Rule::integrate(f, -1.0, x, 0, 0.0);
    const double two = Rule::integrate(f, -1.0, mid, 0, 0.0) + Rule::integrate(f, mid, x, 0, 0.0);
    const double residual = std::abs(one - two);
    if (residual > kQuadratureTol) {
        throw NumericalError("cutoff quadrature did not converge (residual " +
                                 std::to_string(residual) + ")",
                             residual);
    }
    return two;
}

}  // namespace

double select_delta(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("select_delta: epsilon must be positive");
    const double root = 0.5 * (std::sqrt(1.0 + 4.0 * epsilon) - 1.0);
    return std::min(0.24, 0.99 * root);
}

CutoffProfile::CutoffProfile(double delta) : delta_(delta) {
    if (!(delta > 0.0 && delta < 0.25)) {
        throw std::invalid_argument("CutoffProfile: delta must lie in (0, 1/4)");
    }
    plateau_ = delta / (2.0 * (1.0 + delta));
    bump_radius_ = plateau_ / 4.0;
    norm_ = bump_integral();
}

double CutoffProfile::bump_cdf(double x) const {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x > 0.0) return 1.0 - bump_cdf(-x);
    return fixed_integral(bump, x) / norm_;
}

double CutoffProfile::bump_moment(double x) const {
    if (x <= -1.0) return 0.0;
    if (x > 0.0) return x + bump_moment(-x);
    return fixed_integral([x](double y) { return (x - y) * bump(y); }, x) / norm_;
}

double CutoffProfile::value(double s) const {
    const double a = plateau_;
    const double r = bump_radius_;
    const double slope = 1.0 + delta_;
    if (s <= a - r) return 0.0;
    if (s < a + r) return slope * r * bump_moment((s - a) / r);
    if (s <= 1.0 - a - r) return slope * (s - a);
    if (s < 1.0 - a + r) return 1.0 - slope * r * bump_moment(-(s - (1.0 - a)) / r);
    return 1.0;
}

double CutoffProfile::derivative(double s) const {
    const double a = plateau_;
    const double r = bump_radius_;
    const double slope = 1.0 + delta_;
    if (s <= a - r || s >= 1.0 - a + r) return 0.0;
    if (s < a + r) return slope * bump_cdf((s - a) / r);
    if (s <= 1.0 - a - r) return slope;
    return slope * bump_cdf(-(s - (1.0 - a)) / r);
}

double CutoffProfile::second_derivative(double s) const {
    const double a = plateau_;
    const double r = bump_radius_;
    const double scale = (1.0 + delta_) / (r * norm_);
    if (std::abs(s - a) < r) return scale * bump((s - a) / r);
    if (std::abs(s - (1.0 - a)) < r) return -scale * bump((s - (1.0 - a)) / r);
    return 0.0;
}

double CutoffProfile::increment(double s, double ds) const {
    // Below this step the second-order Taylor remainder is < 1e-18 * sup|chi'''|.
    if (std::abs(ds) >= 1e-6) return value(s + ds) - value(s);
    return derivative(s) * ds + 0.5 * second_derivative(s) * ds * ds;
}

}  // namespace diracuc
