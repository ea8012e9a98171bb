#include "diracuc/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diracuc {

namespace {

constexpr cplx kI{0.0, 1.0};

template <class G>
auto central_difference(G&& g, double h, int order) {
    if (order == 2) return ((g(h) - g(-h)) / (2.0 * h)).eval();
    if (order == 4) return ((g(-2.0 * h) - 8.0 * g(-h) + 8.0 * g(h) - g(2.0 * h)) / (12.0 * h)).eval();
    throw std::invalid_argument("finite-difference order must be 2 or 4");
}

}  // namespace

CliffordSet clifford(int n) {
    const cplx i = kI;
    Eigen::Matrix2cd s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, -i, i, 0;
    s3 << 1, 0, 0, -1;

    CliffordSet out;
    out.n = n;
    if (n == 2) {
        out.N = 2;
        out.alpha = {s1, s2, s3};
        return out;
    }
    if (n == 3) {
        out.N = 4;
        for (const Eigen::Matrix2cd& s : {s1, s2, s3}) {
            Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
            a.block(0, 2, 2, 2) = s;
            a.block(2, 0, 2, 2) = s;
            out.alpha.push_back(a);
        }
        Eigen::MatrixXcd beta = Eigen::MatrixXcd::Identity(4, 4);
        beta.block(2, 2, 2, 2) *= -1.0;
        out.alpha.push_back(beta);
        return out;
    }
    throw std::invalid_argument("clifford: only n = 2 and n = 3 are supported");
}

LocalSpinor apply_dirac_fd(const PolarField& field, double t0, double theta, const FDStencil& st) {
    if (!(st.h_t > 0.0 && st.h_theta > 0.0)) throw std::invalid_argument("FD step must be positive");
    const LocalSpinor centre = field(t0, 0.0, theta);
    const Eigen::Vector2cd dt = central_difference(
        [&](double tau) { return field(t0, tau, theta).v; }, st.h_t, st.order);
    const Eigen::Vector2cd dth = central_difference(
        [&](double sig) { return field(t0, 0.0, theta + sig).v; }, st.h_theta, st.order);

    LocalSpinor out;
    out.log_scale = centre.log_scale - t0;
    // -2i d_z (lower), -2i d_zbar (upper)
    out.v(0) = -kI * std::polar(1.0, -theta) * (dt(1) - kI * dth(1));
    out.v(1) = -kI * std::polar(1.0, theta) * (dt(0) + kI * dth(0));
    return out;
}

double relative_residual(const LocalSpinor& a, const LocalSpinor& b, double scale_mantissa) {
    const double diff = (a.v - b.v).norm();
    const double denom = std::max(a.v.norm() + b.v.norm(), std::abs(scale_mantissa));
    if (denom == 0.0) return 0.0;
    return diff / denom;
}

double dirac_residual(const Counterexample& ce, PolarPoint p, const FDStencil& st) {
    const Region region = ce.classify(p.t);
    const PolarField f = [&](double t0, double tau, double th) {
        return ce.u_local(region, t0, tau, th);
    };
    const LocalSpinor u = f(p.t, 0.0, p.theta);
    const LocalSpinor du = apply_dirac_fd(f, p.t, p.theta, st);
    const LocalMatrix V = ce.V_local(region, p.t, p.theta);

    LocalSpinor vu;
    vu.log_scale = V.log_scale + u.log_scale;
    vu.v = V.m * u.v;
    // both sides carry log_scale(u) - t0; |u| / r has mantissa |u.v| on that scale
    return relative_residual(du, vu, u.v.norm());
}

double opnorm2(const Eigen::Matrix2cd& m) {
    // F^2 - 4|det|^2 written as a sum of squares from M M^*, so nearly equal
    // singular values do not cancel.
    const double p = m.row(0).squaredNorm();
    const double q = m.row(1).squaredNorm();
    const cplx r = m.row(0).dot(m.row(1));
    const double disc = (p - q) * (p - q) + 4.0 * std::norm(r);
    return std::sqrt(0.5 * (p + q + std::sqrt(disc)));
}

ExtReal opnorm2(const PotentialValue& v) {
    double ref = -std::numeric_limits<double>::infinity();
    for (const ExtComplex& e : v.entries)
        if (!e.is_zero()) ref = std::max(ref, e.logmag);
    if (!std::isfinite(ref)) return ExtReal::zero();
    Eigen::Matrix2cd m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = v(r, c).mantissa(ref);
    const double s = opnorm2(m);
    if (s == 0.0) return ExtReal::zero();
    return ExtReal::from_log(ref + std::log(s));
}

Eigen::VectorXcd apply_dirac_cartesian(const CliffordSet& cl, const CartesianField& u,
                                       const Eigen::VectorXd& x, double h, int order, double mass) {
    if (x.size() != cl.n) throw std::invalid_argument("apply_dirac_cartesian: dimension mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cl.N);
    for (int j = 0; j < cl.n; ++j) {
        const Eigen::VectorXcd dj = central_difference(
            [&](double s) {
                Eigen::VectorXd y = x;
                y(j) += s;
                return u(y);
            },
            h, order);
        out += -kI * (cl.alpha[j] * dj);
    }
    if (mass != 0.0) out += mass * (cl.alpha[cl.n] * u(x));
    return out;
}

}  // namespace diracuc
