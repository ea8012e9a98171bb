#pragma once

#include "diracuc/extrange.hpp"
#include "diracuc/spinor_fields.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace diracuc {

/// Hermitian alpha_1 .. alpha_{n+1} with alpha_j alpha_k + alpha_k alpha_j = 2 delta_jk I.
struct CliffordSet {
    int n = 0;
    int N = 0;
    std::vector<Eigen::MatrixXcd> alpha;  // alpha[0] is alpha_1

    /// 1-based access matching the usual notation.
    const Eigen::MatrixXcd& operator()(int j) const { return alpha.at(j - 1); }
};

/// Pauli matrices for n = 2, the standard 4x4 Dirac representation for n = 3.
CliffordSet clifford(int n);

struct FDStencil {
    double h_t = 1e-5;
    double h_theta = 1e-5;
    int order = 2;  ///< 2 or 4, central
};

/// D u at (t0, theta) from central differences of a factored field.
/// Uses d/dz = e^{-i theta}/2 e^{-t} (d_t - i d_theta) and the conjugate for d/dzbar;
/// the result shares the field's log_scale shifted by -t0.
LocalSpinor apply_dirac_fd(const PolarField& field, double t0, double theta, const FDStencil& st = {});

/// |a - b| / max(|a| + |b|, |scale|) for spinors with a common log_scale.
double relative_residual(const LocalSpinor& a, const LocalSpinor& b, double scale_mantissa);

/// Relative FD residual of D u = V u at p, with |u| / r as the floor of the
/// denominator so that V = 0 bands report an absolute residual on that scale.
double dirac_residual(const Counterexample& ce, PolarPoint p, const FDStencil& st = {});

/// Largest singular value of a 2x2 complex matrix, sigma^2 = (F + sqrt(F^2 - 4 |det|^2)) / 2.
double opnorm2(const Eigen::Matrix2cd& m);
ExtReal opnorm2(const PotentialValue& v);

// --- Cartesian fields in R^n, n in {2, 3} ---------------------------------

using CartesianField = std::function<Eigen::VectorXcd(const Eigen::VectorXd&)>;

/// -i sum_j alpha_j d_j u + mass * alpha_{n+1} u by central differences of step h.
Eigen::VectorXcd apply_dirac_cartesian(const CliffordSet& cl, const CartesianField& u,
                                       const Eigen::VectorXd& x, double h, int order = 4,
                                       double mass = 0.0);

}  // namespace diracuc
