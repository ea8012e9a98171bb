#include "diracuc/radii.hpp"

#include <cmath>

namespace diracuc {

SchedulePreset parse_preset(const std::string& name) {
    if (name == "paper") return SchedulePreset::paper;
    if (name == "mild") return SchedulePreset::mild;
    throw std::invalid_argument("unknown schedule preset '" + name + "'");
}

std::string to_string(SchedulePreset p) {
    return p == SchedulePreset::paper ? "paper" : "mild";
}

RadiiSchedule::RadiiSchedule(SchedulePreset preset, int k_max) : preset_(preset), k_max_(k_max) {
    const int ceiling = preset == SchedulePreset::paper ? kPaperMaxK : kMildMaxK;
    if (k_max < 1 || k_max > ceiling) {
        throw ConfigError("k_max must lie in [1, " + std::to_string(ceiling) + "] for the " +
                          to_string(preset) + " schedule");
    }
}

void RadiiSchedule::check_k(int k) const {
    if (k < 0 || k > k_max_) {
        throw std::out_of_range("annulus index " + std::to_string(k) + " outside [0, " +
                                std::to_string(k_max_) + "]");
    }
}

double RadiiSchedule::log_rho(int k, int j) const {
    check_k(k);
    if (j < 0 || j > 6) throw std::out_of_range("band index j must lie in [0, 6]");
    // (6k + j) / 6 is exact at j = 6, which makes rho_{k,6} == rho_{k+1,0} bitwise.
    const double x = static_cast<double>(6 * k + j) / 6.0;
    if (preset_ == SchedulePreset::paper) return -std::exp(x * x);
    return -std::exp2(x);
}

BandConstants RadiiSchedule::band_constants(int k) const {
    const double c = 1.0 / (1.0 - log_rho(k, 1) / log_rho(k, 2));
    const double c_tilde = 1.0 / (1.0 - log_rho(k, 4) / log_rho(k, 5));
    return {c, c_tilde};
}

K0Conditions RadiiSchedule::k0_conditions(int k, double delta) const {
    const BandConstants bc = band_constants(k);
    K0Conditions out{};
    out.slope_inner = bc.c <= 1.0 + delta;
    out.gap_23 = 1.0 / (log_rho(k, 2) - log_rho(k, 3)) <= delta;
    out.gap_34 = 1.0 / (log_rho(k, 3) - log_rho(k, 4)) <= delta;
    out.slope_outer = bc.c_tilde <= 1.0 + delta;
    out.cap = 1.0 / std::abs(log_rho(k, 0)) <= 0.5;
    return out;
}

int RadiiSchedule::select_k0(double delta) const {
    int k0 = -1;
    for (int k = k_max_; k >= 1; --k) {
        if (!k0_conditions(k, delta).all()) break;
        k0 = k;
    }
    if (k0 < 0) {
        throw ConfigError("no admissible k0 in [1, " + std::to_string(k_max_) + "] for the " +
                          to_string(preset_) + " schedule at delta = " + std::to_string(delta));
    }
    return k0;
}

}  // namespace diracuc
