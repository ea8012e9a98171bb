#pragma once

// Grid checks over the glued counterexample and its inversion. Each check
// returns a CheckReport; failures are reports, not exceptions.

#include "diracuc/dirac.hpp"
#include "diracuc/extrange.hpp"
#include "diracuc/kelvin.hpp"
#include "diracuc/kernels.hpp"
#include "diracuc/spinor_fields.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace diracuc {

struct SampleGrid {
    int radial = 48;      ///< log-uniform in r, i.e. uniform in t
    int angular = 32;
    double margin = 0.1;  ///< fraction of band width excluded at each seam (FD checks)

    /// Throws std::invalid_argument unless counts >= 2 and margin in [0, 0.4).
    void validate() const;
};

struct RunParameters {
    double epsilon = 0.0;
    double delta = 0.0;
    int k0 = 0;
    int k_max = 0;
    SchedulePreset preset = SchedulePreset::paper;
};

RunParameters parameters_of(const Counterexample& ce);

struct CheckReport {
    std::string name;
    std::string region;        ///< where the worst value occurred
    std::size_t points = 0;
    ExtReal worst_value;       ///< checked quantity at its worst point
    ExtReal worst_margin;      ///< limit - worst value; negative means violated
    bool pass = false;
    RunParameters params;
    std::string detail;

    /// max(0, -worst_margin) as a plain ExtReal.
    ExtReal violation() const;
};

bool all_pass(std::span<const CheckReport> reports);

/// radial x angular points inside a band, skipping `margin` of its width at each end.
std::vector<PolarPoint> band_points(const Counterexample& ce, const Region& band, const SampleGrid& grid,
                                    double margin);

/// Cutoff shape on n points of [0, 1]: 0 <= chi <= 1, chi(s) <= s on [0, 1/2],
/// chi(1/2) = 1/2, chi nondecreasing, max chi' = 1 + delta.
CheckReport check_cutoff(const CutoffProfile& cutoff, int samples = 10000);

/// All five k0 conditions on [k0, k_max].
CheckReport check_k0_conditions(const Counterexample& ce);

/// max of opnorm(V) * |z| over the bands of annuli k0 .. k0 + span - 1 and the
/// outer cap, refined by Brent search around each band's grid maximum.
CheckReport check_potential_bound(const Counterexample& ce, const SampleGrid& grid,
                                  Exec exec = Exec::parallel, int span = 4);

/// Identity tolerance used when none is given: 1e-6 (mild), 1e-5 (paper).
double default_identity_tol(SchedulePreset preset);

/// max dirac_residual over interior points of the bands of annuli
/// k0 .. k0 + span - 1 and over 0 < log|z| <= 1.
CheckReport check_identity(const Counterexample& ce, const SampleGrid& grid, const FDStencil& st,
                           double tol, Exec exec = Exec::parallel, int span = 3);

/// log|u| <= log 2 + k log|z| on every band of annulus k, k0 <= k < k_max.
CheckReport check_decay(const Counterexample& ce, const SampleGrid& grid, Exec exec = Exec::parallel);

/// Neighbouring formulas agree at every seam of annuli k0 .. k0 + span - 1
/// (relative logmag and direction, tolerance 1e-12).
CheckReport check_continuity(const Counterexample& ce, int angles = 64, int span = 4);

/// Closed-form upper bound for int_{|x| < rho_m} |x|^weight |u|^2 from |u| <= 2|z|^k
/// on annulus k, with the annulus k_max bound used for the tail.
ExtReal origin_mass_bound(const Counterexample& ce, int m, int weight = 0);

/// Trapezoid rule in t for int_{rho_{k_max} < |x| < rho_m} |u|^2, in ExtReal.
ExtReal origin_mass_quadrature(const Counterexample& ce, int m, int radial_per_band, int angular);

struct VanishingSeries {
    int k = 0;
    std::vector<int> m;
    std::vector<double> log_radius;  ///< log R
    std::vector<ExtReal> value;      ///< R^{-k} bound (origin) or R^k bound (infinity)
    bool strictly_decreasing = false;
    double slope = 0.0;              ///< least-squares d logmag / d |log R|
};

std::vector<VanishingSeries> origin_vanishing_series(const Counterexample& ce, std::span<const int> k_list);
std::vector<VanishingSeries> infinity_vanishing_series(const InfinityExample& psi, std::span<const int> k_list);

/// Strict decrease along R = rho_m plus negative trend slope, for each k.
CheckReport check_vanishing_origin(const Counterexample& ce, std::span<const int> k_list);

/// Quadrature never exceeds the closed-form bound at R = rho_m.
CheckReport check_mass_quadrature(const Counterexample& ce, const SampleGrid& grid);

/// psi vanishes identically on |x| < 1.
CheckReport check_infinity_support(const InfinityExample& psi, const SampleGrid& grid);

/// opnorm(V_psi) * |x| <= 1/2 + eps at the inversions of the bound-check grid.
CheckReport check_infinity_bound(const InfinityExample& psi, const SampleGrid& grid,
                                 Exec exec = Exec::parallel, int span = 4);

/// D psi = V_psi psi at interior points of the inverted bands of annuli k0 .. k0 + span - 1.
CheckReport check_infinity_identity(const InfinityExample& psi, const SampleGrid& grid, const FDStencil& st,
                                    double tol, Exec exec = Exec::parallel, int span = 3);

/// Strict decrease of R^k int_{|x| > R} |psi|^2 bounds along R = 1 / rho_m.
CheckReport check_vanishing_infinity(const InfinityExample& psi, std::span<const int> k_list);

struct VerifyOptions {
    SampleGrid grid;
    FDStencil stencil;
    double identity_tol = 0.0;  ///< <= 0 selects default_identity_tol
    std::vector<int> vanishing_k = {1, 5, 10};
    Exec exec = Exec::parallel;
};

/// Every check above in a fixed order.
std::vector<CheckReport> run_all(const Counterexample& ce, const VerifyOptions& opts = {});

/// The infinity_* checks for psi = u_K.
std::vector<CheckReport> run_infinity(const Counterexample& ce, const VerifyOptions& opts = {});

struct KelvinCheckOptions {
    int points = 50;              ///< per residual check
    int involution_points = 100;
    double lemma_tol = 1e-5;
    std::uint64_t seed = 20240917;
};

/// Involution, multiplier unitarity, commutation residuals for Gaussian,
/// harmonic and polynomial spinors, the transported bound, and the weighted
/// shell-mass identity int_{a<|x|<b} |u_K|^2 = int_{1/b<|y|<1/a} |y|^{-2} |u|^2.
std::vector<CheckReport> run_kelvin_checks(const KelvinCheckOptions& opts = {});

}  // namespace diracuc
