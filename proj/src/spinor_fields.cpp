#include "diracuc/spinor_fields.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace diracuc {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx phase(double angle) { return std::polar(1.0, angle); }

// Odd annuli are the even construction mirrored: theta -> -theta and the two
// spinor components exchanged.
Eigen::Vector2cd swap(const Eigen::Vector2cd& v) { return {v(1), v(0)}; }

Eigen::Matrix2cd swap(const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd out;
    out << m(1, 1), m(1, 0), m(0, 1), m(0, 0);
    return out;
}

}  // namespace

std::string to_string(const Region& r) {
    if (r.is_outer()) return "outer";
    return "band(" + std::to_string(r.k) + "," + std::to_string(r.j) + ")";
}

SpinorValue LocalSpinor::to_ext() const {
    return {ExtComplex::from_scaled(log_scale, v(0)), ExtComplex::from_scaled(log_scale, v(1))};
}

double LocalSpinor::log_norm() const {
    const double n = v.norm();
    if (n == 0.0) return -std::numeric_limits<double>::infinity();
    return log_scale + std::log(n);
}

PotentialValue LocalMatrix::to_ext() const {
    PotentialValue out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.entries[2 * r + c] = ExtComplex::from_scaled(log_scale, m(r, c));
    return out;
}

LocalSpinor bigE_local(int k, double t0, double tau, double theta) {
    LocalSpinor out;
    out.log_scale = k * t0;
    const double amp = std::exp(k * tau);
    if (k % 2 == 0) {
        out.v(1) = amp * phase(-k * theta);
    } else {
        out.v(0) = amp * phase(k * theta);
    }
    return out;
}

SpinorValue bigE(int k, PolarPoint p) {
    const ExtComplex z = ExtComplex::from_polar(p.t, p.theta);
    if (k % 2 == 0) return {ExtComplex{}, pow_int(z.conj(), k)};
    return {pow_int(z, k), ExtComplex{}};
}

// ---------------------------------------------------------------------------

Counterexample::Counterexample(RadiiSchedule schedule, CutoffProfile cutoff, double epsilon, int k0,
                               OuterPotential outer)
    : schedule_(schedule), cutoff_(cutoff), epsilon_(epsilon), k0_(k0), outer_(outer) {
    if (k0 < 1 || k0 > schedule_.k_max() - 1) {
        throw ConfigError("k0 = " + std::to_string(k0) + " must lie in [1, k_max - 1]");
    }
}

Counterexample Counterexample::build(const CounterexampleConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const double delta = cfg.delta.value_or(select_delta(cfg.epsilon));
    if (!(delta > 0.0 && delta < 0.25 && delta * delta + delta <= cfg.epsilon)) {
        throw std::invalid_argument("delta must satisfy 0 < delta < 1/4 and delta^2 + delta <= epsilon");
    }
    const int k_max = cfg.k_max.value_or(cfg.preset == SchedulePreset::paper ? 12 : 8);
    RadiiSchedule schedule(cfg.preset, k_max);

    int k0 = 0;
    if (cfg.k0) {
        k0 = *cfg.k0;
    } else {
        try {
            k0 = schedule.select_k0(delta);
            if (k0 % 2 != 0) ++k0;
        } catch (const ConfigError&) {
            if (cfg.preset == SchedulePreset::paper) throw;
            k0 = kFallbackK0;
        }
    }
    return Counterexample(schedule, CutoffProfile(delta), cfg.epsilon, k0, cfg.outer);
}

bool Counterexample::k0_admissible() const {
    for (int k = k0_; k <= schedule_.k_max(); ++k) {
        if (!schedule_.k0_conditions(k, delta()).all()) return false;
    }
    return true;
}

Region Counterexample::classify(double t) const {
    if (!std::isfinite(t)) throw RangeError("classify: non-finite log-radius");
    if (t >= schedule_.log_rho(k0_, 0)) return Region::outer();
    const int k_max = schedule_.k_max();
    if (t < schedule_.log_rho(k_max, 0)) {
        throw RangeError("classify: |z| below rho_{k_max}; raise k_max");
    }
    for (int k = k0_; k < k_max; ++k) {
        if (t < schedule_.log_rho(k + 1, 0)) continue;
        for (int j = 0; j < 6; ++j) {
            if (t >= schedule_.log_rho(k, j + 1)) return Region::band(k, j);
        }
    }
    throw std::logic_error("classify: schedule is not strictly decreasing");
}

std::pair<double, double> Counterexample::t_range(const Region& r) const {
    if (r.is_outer()) return {schedule_.log_rho(k0_, 0), std::numeric_limits<double>::infinity()};
    return {schedule_.log_rho(r.k, r.j + 1), schedule_.log_rho(r.k, r.j)};
}

// Even-orientation formulas: E_k = (0, conj(z)^k), E_{k+1} = (z^{k+1}, 0).
// All radial profiles are written in t = log r. The returned mantissas are
// relative to exp(power * t0 + excess).
Counterexample::Factored Counterexample::u_even(const Region& region, int k, double t0, double tau,
                                                double theta) const {
    Factored f;
    const cplx ek = phase(-k * theta);
    const cplx ek1 = phase((k + 1) * theta);

    if (region.is_outer()) {
        // eta(r) = chi(log r / log rho_{k0})
        const double L = schedule_.log_rho(k0_, 0);
        const double s0 = t0 / L;
        const double eta = cutoff_.value(s0) + cutoff_.increment(s0, tau / L);
        f.power = k;
        f.v(1) = eta * std::exp(k * tau) * ek;
        return f;
    }

    const auto L = [&](int j) { return schedule_.log_rho(k, j); };
    switch (region.j) {
        case 0:
            f.power = k;
            f.v(1) = std::exp(k * tau) * ek;
            break;
        case 5:
            f.power = k + 1;
            f.v(0) = std::exp((k + 1) * tau) * ek1;
            break;
        case 1: {
            // r^{phi/2} E_k, phi = chi(c (1 - L1 / t))
            const double c = schedule_.band_constants(k).c;
            const double s0 = c * (1.0 - L(1) / t0);
            const double ds = c * L(1) * tau / (t0 * (t0 + tau));
            const double chi0 = cutoff_.value(s0);
            const double dchi = cutoff_.increment(s0, ds);
            f.power = k;
            f.excess = 0.5 * chi0 * t0;
            const double rel = 0.5 * (dchi * t0 + (chi0 + dchi) * tau) + k * tau;
            f.v(1) = std::exp(rel) * ek;
            break;
        }
        case 2: {
            // r^{1/2} E_k + phi r^{-1/2} E_{k+1}, phi = chi((L2 - t) / (L2 - L3))
            const double w = L(2) - L(3);
            const double s0 = (L(2) - t0) / w;
            const double phi = cutoff_.value(s0) + cutoff_.increment(s0, -tau / w);
            const double amp = std::exp((k + 0.5) * tau);
            f.power = k + 0.5;
            f.v(0) = phi * amp * ek1;
            f.v(1) = amp * ek;
            break;
        }
        case 3: {
            // phi~ r^{1/2} E_k + r^{-1/2} E_{k+1}, phi~ = chi((t - L4) / (L3 - L4))
            const double w = L(3) - L(4);
            const double s0 = (t0 - L(4)) / w;
            const double phi = cutoff_.value(s0) + cutoff_.increment(s0, tau / w);
            const double amp = std::exp((k + 0.5) * tau);
            f.power = k + 0.5;
            f.v(0) = amp * ek1;
            f.v(1) = phi * amp * ek;
            break;
        }
        case 4: {
            // r^{phi~/2} E_{k+1}, phi~ = chi(c~ (1 - L4 / t)) - 1
            const double c = schedule_.band_constants(k).c_tilde;
            const double s0 = c * (1.0 - L(4) / t0);
            const double ds = c * L(4) * tau / (t0 * (t0 + tau));
            const double chi0 = cutoff_.value(s0);
            const double dchi = cutoff_.increment(s0, ds);
            f.power = k + 1;
            f.excess = 0.5 * (chi0 - 1.0) * t0;
            const double rel = 0.5 * (dchi * t0 + (chi0 + dchi - 1.0) * tau) + (k + 1) * tau;
            f.v(0) = std::exp(rel) * ek1;
            break;
        }
        default:
            throw std::logic_error("band index out of range");
    }
    return f;
}

// r * V in the even orientation.
Eigen::Matrix2cd Counterexample::V_even(const Region& region, int k, double t0, double theta) const {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    const cplx e_minus = phase(-theta);
    const cplx e_plus = phase(theta);

    if (region.is_outer()) {
        const double L = schedule_.log_rho(k0_, 0);
        const double s = t0 / L;
        const double deta = cutoff_.derivative(s) / L;  // d eta / dt
        if (outer_ == OuterPotential::published) {
            m(0, 1) = -kI * e_minus * deta;
        } else {
            const double eta = cutoff_.value(s);
            if (eta > 0.0) m(0, 1) = -kI * e_minus * (deta / eta);
        }
        return m;
    }

    const auto L = [&](int j) { return schedule_.log_rho(k, j); };
    switch (region.j) {
        case 0:
        case 5:
            break;
        case 1: {
            // (-i e^{-i theta} / 2) d/dt(phi t)
            const double c = schedule_.band_constants(k).c;
            const double s = c * (1.0 - L(1) / t0);
            const double d = cutoff_.value(s) + cutoff_.derivative(s) * c * L(1) / t0;
            m(0, 1) = -0.5 * kI * e_minus * d;
            break;
        }
        case 2: {
            const double w = L(2) - L(3);
            const double s = (L(2) - t0) / w;
            m(0, 1) = -0.5 * kI * e_minus;
            m(1, 0) = 0.5 * kI * e_plus;
            m(1, 1) = kI * phase((2 * k + 2) * theta) * (cutoff_.derivative(s) / w);
            break;
        }
        case 3: {
            const double w = L(3) - L(4);
            const double s = (t0 - L(4)) / w;
            m(0, 1) = -0.5 * kI * e_minus;
            m(1, 0) = 0.5 * kI * e_plus;
            m(0, 0) = -kI * phase(-(2 * k + 2) * theta) * (cutoff_.derivative(s) / w);
            break;
        }
        case 4: {
            // (-i e^{+i theta} / 2) d/dt(phi~ t), acting on the upper slot
            const double c = schedule_.band_constants(k).c_tilde;
            const double s = c * (1.0 - L(4) / t0);
            const double d = cutoff_.value(s) - 1.0 + cutoff_.derivative(s) * c * L(4) / t0;
            m(1, 0) = -0.5 * kI * e_plus * d;
            break;
        }
        default:
            throw std::logic_error("band index out of range");
    }
    return m;
}

Counterexample::Factored Counterexample::u_factored(const Region& region, double t0, double tau,
                                                    double theta) const {
    const int k = region.is_outer() ? k0_ : region.k;
    if (k % 2 == 0) return u_even(region, k, t0, tau, theta);
    Factored f = u_even(region, k, t0, tau, -theta);
    f.v = swap(f.v);
    return f;
}

LocalSpinor Counterexample::u_local(const Region& region, double t0, double tau, double theta) const {
    const Factored f = u_factored(region, t0, tau, theta);
    return {f.power * t0 + f.excess, f.v};
}

LocalSpinor Counterexample::u_local(double t0, double tau, double theta) const {
    return u_local(classify(t0), t0, tau, theta);
}

LocalMatrix Counterexample::V_local(const Region& region, double t0, double theta) const {
    const int k = region.is_outer() ? k0_ : region.k;
    LocalMatrix out;
    out.log_scale = -t0;
    out.m = k % 2 == 0 ? V_even(region, k, t0, theta) : swap(V_even(region, k, t0, -theta));
    return out;
}

LocalMatrix Counterexample::V_local(double t0, double theta) const {
    return V_local(classify(t0), t0, theta);
}

double Counterexample::log_excess(PolarPoint p, double h) const {
    const Factored f = u_factored(classify(p.t), p.t, 0.0, p.theta);
    const double n = f.v.norm();
    if (n == 0.0) return -std::numeric_limits<double>::infinity();
    return (f.power - h) * p.t + f.excess + std::log(n);
}

SpinorValue Counterexample::eval_u(PolarPoint p) const {
    if (p.t == -std::numeric_limits<double>::infinity()) return {};  // u(0) = 0
    return u_local(p.t, 0.0, p.theta).to_ext();
}

PotentialValue Counterexample::eval_V(PolarPoint p) const { return V_local(p.t, p.theta).to_ext(); }

PolarField Counterexample::field() const {
    return [self = *this](double t0, double tau, double theta) { return self.u_local(t0, tau, theta); };
}

}  // namespace diracuc
