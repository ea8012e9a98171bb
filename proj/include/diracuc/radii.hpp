#pragma once

#include <stdexcept>
#include <string>

namespace diracuc {

/// No admissible parameters (e.g. no starting annulus index in range).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SchedulePreset {
    paper,  ///< log rho_{k,j} = -exp((k + j/6)^2)
    mild,   ///< log rho_{k,j} = -2^(k + j/6), radii stay representable as doubles
};

SchedulePreset parse_preset(const std::string& name);
std::string to_string(SchedulePreset p);

struct BandConstants {
    double c;        ///< (1 - log rho_{k,1} / log rho_{k,2})^{-1}
    double c_tilde;  ///< (1 - log rho_{k,4} / log rho_{k,5})^{-1}
};

/// The five sufficient conditions on annulus k for the potential budget.
struct K0Conditions {
    bool slope_inner;    ///< (a) c_k <= 1 + delta
    bool gap_23;         ///< (b) 1 / (log rho_{k,2} - log rho_{k,3}) <= delta
    bool gap_34;         ///< (c) 1 / (log rho_{k,3} - log rho_{k,4}) <= delta
    bool slope_outer;    ///< (d) c~_k <= 1 + delta
    bool cap;            ///< (e) 1 / |log rho_{k,0}| <= 1/2

    bool all() const { return slope_inner && gap_23 && gap_34 && slope_outer && cap; }
};

/// Doubly indexed radii rho_{k,j}, j = 0..6, stored only as logarithms.
/// rho_{k,6} == rho_{k+1,0} exactly. Immutable; safe to share.
class RadiiSchedule {
public:
    static constexpr int kPaperMaxK = 25;
    static constexpr int kMildMaxK = 40;

    RadiiSchedule(SchedulePreset preset, int k_max);

    SchedulePreset preset() const { return preset_; }
    int k_max() const { return k_max_; }

    /// log rho_{k,j}; k in [0, k_max], j in [0, 6].
    double log_rho(int k, int j = 0) const;

    BandConstants band_constants(int k) const;
    K0Conditions k0_conditions(int k, double delta) const;

    /// Smallest k such that every k' in [k, k_max] passes all five conditions.
    /// Throws ConfigError when none does.
    int select_k0(double delta) const;

private:
    void check_k(int k) const;

    SchedulePreset preset_;
    int k_max_;
};

}  // namespace diracuc
