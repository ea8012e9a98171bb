#pragma once

// Inversion x -> x / |x|^2 adapted to the Dirac operator:
//   u_K(x) = |x|^{-(n-1)} [i alpha.(x/|x|) alpha_{n+1}] u(x / |x|^2).
// The bracket squares to the identity and is unitary, so the transform is an
// involution, and D u_K = |x|^{-2} (D u)_K.

#include "diracuc/dirac.hpp"
#include "diracuc/spinor_fields.hpp"

#include <Eigen/Dense>

#include <vector>

namespace diracuc {

/// i alpha.(x/|x|) alpha_{n+1}; x must be nonzero.
Eigen::MatrixXcd kelvin_multiplier(const CliffordSet& cl, const Eigen::VectorXd& x);

/// The n = 2 multiplier in polar form, [[0, -i e^{-i theta}], [i e^{i theta}, 0]].
Eigen::Matrix2cd kelvin_multiplier(double theta);

/// Kelvin transform of a Cartesian field in R^n, n in {2, 3}.
class KelvinField {
public:
    KelvinField(CliffordSet cl, CartesianField base);

    int dimension() const { return cl_.n; }
    const CliffordSet& clifford_set() const { return cl_; }
    const CartesianField& base() const { return base_; }

    Eigen::VectorXcd operator()(const Eigen::VectorXd& x) const;
    CartesianField as_field() const;

private:
    CliffordSet cl_;
    CartesianField base_;
};

/// n = 2 transform of a factored polar field. Inversion is t -> -t, so a
/// sample at (t0, tau, theta) reads the base at (-t0, -tau, theta):
/// log_scale = base log_scale - t0, mantissa e^{-tau} M(theta) v.
PolarField kelvin_polar(PolarField base);

SpinorValue kelvin_eval(const PolarField& base, PolarPoint p);

/// |L - R| / max(|L| + |R|, |u_K(x)| / |x|) with L = D(u_K)(x) and
/// R = |x|^{-2} (D u)_K(x), both sides by central differences of step h.
double check_lemma31(const CliffordSet& cl, const CartesianField& u, const Eigen::VectorXd& x,
                     double h = 1e-4, int order = 4);

/// Exponent of the transported bound: |D u| <= C|x|^{-gamma}|u| near 0
/// becomes |D u_K| <= C|x|^{gamma - 2}|u_K| near infinity.
double transport_bound(double gamma);

struct TransportReport {
    double gamma = 0.0;
    double constant = 0.0;      ///< C
    double worst_source = 0.0;  ///< max |D u| / (C|x|^{-gamma}|u|) over the samples
    double worst_image = 0.0;   ///< max |D u_K| / (C|x|^{gamma-2}|u_K|) over inverted samples
    int points = 0;
    bool pass = false;          ///< both ratios <= 1 + slack
};

/// Ratio check on both sides of the inversion for a field with a known bound.
/// `samples` lie near the origin; their inversions are tested for the image.
TransportReport check_transport(const CliffordSet& cl, const CartesianField& u, double gamma,
                                double constant, const std::vector<Eigen::VectorXd>& samples,
                                double slack = 1e-8, double h = 1e-4);

/// exp(-beta |x|^{1 - gamma}) * w for a constant spinor w (n = 3), or times
/// E_1 for n = 2. Satisfies |D u| = beta (gamma - 1) |x|^{-gamma} |u| exactly.
CartesianField synthetic_transport_field(const CliffordSet& cl, double gamma, double beta);

/// psi = u_K for the glued counterexample: zero on |x| < 1, and
/// D psi = V_psi psi with V_psi(x) = |x|^{-2} M V(x / |x|^2) M.
class InfinityExample {
public:
    explicit InfinityExample(Counterexample base);

    const Counterexample& base() const { return base_; }
    /// psi is defined for t <= -log rho_{k_max}.
    double t_max() const { return -base_.schedule().log_rho(base_.schedule().k_max(), 0); }

    /// Region of the base field that feeds the sample at log-radius t.
    Region base_region(double t) const { return base_.classify(-t); }

    LocalSpinor psi_local(const Region& base_region, double t0, double tau, double theta) const;
    LocalSpinor psi_local(double t0, double tau, double theta) const;
    LocalMatrix V_local(double t0, double theta) const;

    SpinorValue eval(PolarPoint p) const;
    PotentialValue eval_V(PolarPoint p) const;
    PolarField field() const;

    /// Relative residual of D psi = V_psi psi, as dirac_residual for u.
    double residual(PolarPoint p, const FDStencil& st = {}) const;

private:
    Counterexample base_;
};

InfinityExample infinity_example(const CounterexampleConfig& cfg);

// --- smooth test spinors --------------------------------------------------

/// exp(-|x - centre|^2 / width^2) * (w0 + x_1 w1) with fixed unit spinors w0, w1.
CartesianField gaussian_spinor(const CliffordSet& cl, Eigen::VectorXd centre, double width = 1.0);

/// A fixed polynomial spinor of degree 2 (any n, N).
CartesianField polynomial_spinor(const CliffordSet& cl);

/// E_k on R^2 as a Cartesian field: (0, conj(z)^k) for even k, (z^k, 0) for odd k.
CartesianField harmonic_spinor(int k);

/// Polar view of an n = 2 Cartesian field, with log_scale 0.
PolarField polar_view(CartesianField u);

/// int over t_a < log|x| < t_b of |f|^2 |x|^{weight} dx for an n = 2 polar
/// field with moderate values (Gauss-Kronrod in t, periodic trapezoid in theta).
double shell_mass(const PolarField& f, double t_a, double t_b, double weight = 0.0,
                  int angular = 64);

}  // namespace diracuc
