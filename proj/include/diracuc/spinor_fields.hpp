#pragma once

// The glued counterexample u and its potential V on R^2 \ {0}.
//
// Points are addressed by t = log|z| and theta = Arg z. Every field value is
// produced in factored form exp(log_scale) * (double mantissas) so that
// finite differences can be taken in ordinary floating point even where |u|
// is of order exp(-exp(64)).

#include "diracuc/extrange.hpp"
#include "diracuc/mollifier.hpp"
#include "diracuc/radii.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace diracuc {

using cplx = std::complex<double>;

struct PolarPoint {
    double t = 0.0;      ///< log |z|
    double theta = 0.0;  ///< in (-pi, pi]
};

/// Outer cap {|z| >= rho_{k0}} or band {rho_{k,j+1} <= |z| <= rho_{k,j}}.
struct Region {
    enum class Kind { outer, band };
    Kind kind = Kind::outer;
    int k = 0;
    int j = 0;

    static Region outer() { return {}; }
    static Region band(int k, int j) { return {Kind::band, k, j}; }
    bool is_outer() const { return kind == Kind::outer; }
    bool operator==(const Region&) const = default;
};

std::string to_string(const Region& r);

struct SpinorValue {
    ExtComplex upper;
    ExtComplex lower;
    ExtReal norm() const { return hypot(upper, lower); }
    bool is_zero() const { return upper.is_zero() && lower.is_zero(); }
};

struct PotentialValue {
    std::array<ExtComplex, 4> entries;  // row-major
    const ExtComplex& operator()(int row, int col) const { return entries[2 * row + col]; }
};

/// exp(log_scale) * (upper, lower).
struct LocalSpinor {
    double log_scale = 0.0;
    Eigen::Vector2cd v = Eigen::Vector2cd::Zero();

    SpinorValue to_ext() const;
    /// log |value|, or -inf for an exactly vanishing spinor.
    double log_norm() const;
};

/// exp(log_scale) * m.
struct LocalMatrix {
    double log_scale = 0.0;
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();

    PotentialValue to_ext() const;
};

/// A spinor field sampled around a base point: f(t0, tau, theta) is the value
/// at log-radius t0 + tau. log_scale must depend on t0 only, so that samples
/// sharing t0 can be combined mantissa-wise.
using PolarField = std::function<LocalSpinor(double t0, double tau, double theta)>;

/// E_k: (0, conj(z)^k) for even k, (z^k, 0) for odd k.
SpinorValue bigE(int k, PolarPoint p);
LocalSpinor bigE_local(int k, double t0, double tau, double theta);

/// Which potential to use on the outer cap.
enum class OuterPotential {
    published,      ///< -i e^{-i theta} eta'(r) in the (1,2) slot
    log_derivative, ///< -i e^{-i theta} eta'(r) / eta(r), the one solving D u = V u
};

struct CounterexampleConfig {
    double epsilon = 0.1;
    std::optional<double> delta;  ///< default: select_delta(epsilon)
    SchedulePreset preset = SchedulePreset::paper;
    std::optional<int> k_max;     ///< default 12 (paper) / 8 (mild)
    std::optional<int> k0;        ///< default: select_k0, bumped to even
    OuterPotential outer = OuterPotential::published;
};

/// Default k0 when the schedule admits none (the mild preset).
inline constexpr int kFallbackK0 = 2;

/// The counterexample on annuli k0 .. k_max-1 plus the outer cap.
/// Immutable after construction; all evaluators are pure and thread-safe.
class Counterexample {
public:
    Counterexample(RadiiSchedule schedule, CutoffProfile cutoff, double epsilon, int k0,
                   OuterPotential outer = OuterPotential::published);

    /// Resolve delta and k0 from a configuration. Throws std::invalid_argument
    /// if an explicit delta violates delta^2 + delta <= epsilon or delta < 1/4.
    static Counterexample build(const CounterexampleConfig& cfg);

    const RadiiSchedule& schedule() const { return schedule_; }
    const CutoffProfile& cutoff() const { return cutoff_; }
    double epsilon() const { return epsilon_; }
    double delta() const { return cutoff_.delta(); }
    int k0() const { return k0_; }
    /// Last annulus index covered (k_max - 1).
    int k_last() const { return schedule_.k_max() - 1; }
    /// Whether all k0 conditions hold on [k0, k_max].
    bool k0_admissible() const;

    Region classify(double t) const;
    /// [t_lo, t_hi] of a band; the outer cap reports [log rho_{k0}, +inf].
    std::pair<double, double> t_range(const Region& r) const;

    /// Value of the formula attached to `region`, extended smoothly to t0 + tau.
    LocalSpinor u_local(const Region& region, double t0, double tau, double theta) const;
    LocalSpinor u_local(double t0, double tau, double theta) const;
    LocalMatrix V_local(const Region& region, double t0, double theta) const;
    LocalMatrix V_local(double t0, double theta) const;

    /// log|u(p)| - h * t, evaluated without forming |u| at paper scale.
    /// Returns -inf where u vanishes.
    double log_excess(PolarPoint p, double h) const;

    SpinorValue eval_u(PolarPoint p) const;
    PotentialValue eval_V(PolarPoint p) const;

    PolarField field() const;

private:
    struct Factored {
        double power = 0.0;   // log_scale = power * t0 + excess
        double excess = 0.0;
        Eigen::Vector2cd v = Eigen::Vector2cd::Zero();
    };

    Factored u_even(const Region& region, int k, double t0, double tau, double theta) const;
    Eigen::Matrix2cd V_even(const Region& region, int k, double t0, double theta) const;
    Factored u_factored(const Region& region, double t0, double tau, double theta) const;

    RadiiSchedule schedule_;
    CutoffProfile cutoff_;
    double epsilon_;
    int k0_;
    OuterPotential outer_;
};

}  // namespace diracuc
