#include "diracuc/kelvin.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diracuc {

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::VectorXd invert(const Eigen::VectorXd& x) { return x / x.squaredNorm(); }

}  // namespace

Eigen::MatrixXcd kelvin_multiplier(const CliffordSet& cl, const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::invalid_argument("kelvin_multiplier: x must be nonzero");
    Eigen::MatrixXcd dot = Eigen::MatrixXcd::Zero(cl.N, cl.N);
    for (int j = 0; j < cl.n; ++j) dot += (x(j) / r) * cl.alpha[j];
    return kI * dot * cl.alpha[cl.n];
}

Eigen::Matrix2cd kelvin_multiplier(double theta) {
    Eigen::Matrix2cd m;
    m << 0.0, -kI * std::polar(1.0, -theta), kI * std::polar(1.0, theta), 0.0;
    return m;
}

KelvinField::KelvinField(CliffordSet cl, CartesianField base) : cl_(std::move(cl)), base_(std::move(base)) {
    if (cl_.n != 2 && cl_.n != 3) throw std::invalid_argument("KelvinField: n must be 2 or 3");
}

Eigen::VectorXcd KelvinField::operator()(const Eigen::VectorXd& x) const {
    const double r = x.norm();
    return std::pow(r, -(cl_.n - 1)) * (kelvin_multiplier(cl_, x) * base_(invert(x)));
}

CartesianField KelvinField::as_field() const {
    return [self = *this](const Eigen::VectorXd& x) { return self(x); };
}

PolarField kelvin_polar(PolarField base) {
    return [base = std::move(base)](double t0, double tau, double theta) {
        const LocalSpinor u = base(-t0, -tau, theta);
        LocalSpinor out;
        out.log_scale = u.log_scale - t0;
        out.v = std::exp(-tau) * (kelvin_multiplier(theta) * u.v);
        return out;
    };
}

SpinorValue kelvin_eval(const PolarField& base, PolarPoint p) {
    return kelvin_polar(base)(p.t, 0.0, p.theta).to_ext();
}

double check_lemma31(const CliffordSet& cl, const CartesianField& u, const Eigen::VectorXd& x, double h,
                     int order) {
    const double r = x.norm();
    const Eigen::VectorXd y = invert(x);
    const KelvinField uk(cl, u);

    const Eigen::VectorXcd lhs = apply_dirac_cartesian(cl, uk.as_field(), x, h * r, order);
    const Eigen::VectorXcd du_y = apply_dirac_cartesian(cl, u, y, h / r, order);
    const Eigen::VectorXcd rhs =
        std::pow(r, -2.0 - (cl.n - 1)) * (kelvin_multiplier(cl, x) * du_y);

    const double floor = uk(x).norm() / r;
    const double denom = std::max(lhs.norm() + rhs.norm(), floor);
    return denom == 0.0 ? 0.0 : (lhs - rhs).norm() / denom;
}

double transport_bound(double gamma) { return 2.0 - gamma; }

CartesianField synthetic_transport_field(const CliffordSet& cl, double gamma, double beta) {
    if (!(gamma > 1.0 && beta > 0.0)) throw std::invalid_argument("synthetic field needs gamma > 1, beta > 0");
    const int n = cl.n;
    const int N = cl.N;
    return [n, N, gamma, beta](const Eigen::VectorXd& x) {
        const double r = x.norm();
        const double g = std::exp(-beta * std::pow(r, 1.0 - gamma));
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
        if (n == 2) {
            out(0) = g * cplx(x(0), x(1));
        } else {
            out(0) = g;
        }
        return out;
    };
}

TransportReport check_transport(const CliffordSet& cl, const CartesianField& u, double gamma,
                                double constant, const std::vector<Eigen::VectorXd>& samples,
                                double slack, double h) {
    TransportReport rep;
    rep.gamma = gamma;
    rep.constant = constant;
    const double image_exp = transport_bound(gamma);
    const KelvinField uk(cl, u);
    for (const Eigen::VectorXd& x : samples) {
        const double r = x.norm();
        const double du = apply_dirac_cartesian(cl, u, x, h * r).norm();
        rep.worst_source = std::max(rep.worst_source, du / (constant * std::pow(r, -gamma) * u(x).norm()));

        const Eigen::VectorXd y = invert(x);
        const double ry = y.norm();
        const double dk = apply_dirac_cartesian(cl, uk.as_field(), y, h * ry).norm();
        rep.worst_image = std::max(rep.worst_image, dk / (constant * std::pow(ry, -image_exp) * uk(y).norm()));
        ++rep.points;
    }
    rep.pass = rep.points > 0 && rep.worst_source <= 1.0 + slack && rep.worst_image <= 1.0 + slack;
    return rep;
}

// ---------------------------------------------------------------------------

InfinityExample::InfinityExample(Counterexample base) : base_(std::move(base)) {}

LocalSpinor InfinityExample::psi_local(const Region& region, double t0, double tau, double theta) const {
    const LocalSpinor u = base_.u_local(region, -t0, -tau, theta);
    LocalSpinor out;
    out.log_scale = u.log_scale - t0;
    out.v = std::exp(-tau) * (kelvin_multiplier(theta) * u.v);
    return out;
}

LocalSpinor InfinityExample::psi_local(double t0, double tau, double theta) const {
    return psi_local(base_region(t0), t0, tau, theta);
}

LocalMatrix InfinityExample::V_local(double t0, double theta) const {
    const LocalMatrix v = base_.V_local(-t0, theta);
    const Eigen::Matrix2cd m = kelvin_multiplier(theta);
    LocalMatrix out;
    out.log_scale = v.log_scale - 2.0 * t0;
    out.m = m * v.m * m;
    return out;
}

SpinorValue InfinityExample::eval(PolarPoint p) const {
    if (p.t < 0.0) return {};  // base vanishes for |z| > 1
    return psi_local(p.t, 0.0, p.theta).to_ext();
}

PotentialValue InfinityExample::eval_V(PolarPoint p) const { return V_local(p.t, p.theta).to_ext(); }

PolarField InfinityExample::field() const {
    return [self = *this](double t0, double tau, double theta) { return self.psi_local(t0, tau, theta); };
}

double InfinityExample::residual(PolarPoint p, const FDStencil& st) const {
    const Region region = base_region(p.t);
    const PolarField f = [&](double t0, double tau, double th) { return psi_local(region, t0, tau, th); };
    const LocalSpinor psi = f(p.t, 0.0, p.theta);
    const LocalSpinor dpsi = apply_dirac_fd(f, p.t, p.theta, st);
    const LocalMatrix V = V_local(p.t, p.theta);
    LocalSpinor vpsi;
    vpsi.log_scale = V.log_scale + psi.log_scale;
    vpsi.v = V.m * psi.v;
    return relative_residual(dpsi, vpsi, psi.v.norm());
}

InfinityExample infinity_example(const CounterexampleConfig& cfg) {
    return InfinityExample(Counterexample::build(cfg));
}

CartesianField gaussian_spinor(const CliffordSet& cl, Eigen::VectorXd centre, double width) {
    if (centre.size() != cl.n) throw std::invalid_argument("gaussian_spinor: centre has wrong dimension");
    Eigen::VectorXcd w0(cl.N), w1(cl.N);
    for (int a = 0; a < cl.N; ++a) {
        w0(a) = std::polar(1.0, 0.7 * a + 0.3);
        w1(a) = std::polar(0.5 + 0.25 * a, -1.1 * a);
    }
    w0.normalize();
    w1.normalize();
    return [centre = std::move(centre), width, w0, w1](const Eigen::VectorXd& x) -> Eigen::VectorXcd {
        const double g = std::exp(-(x - centre).squaredNorm() / (width * width));
        return g * (w0 + x(0) * w1);
    };
}

CartesianField polynomial_spinor(const CliffordSet& cl) {
    const int n = cl.n;
    const int N = cl.N;
    return [n, N](const Eigen::VectorXd& x) {
        const double x3 = n > 2 ? x(2) : 0.5;
        Eigen::VectorXcd out(N);
        out(0) = cplx(x(0) * x(0), x(1));
        out(1) = cplx(x(1) * x3, -x(0));
        if (N > 2) {
            out(2) = cplx(1.0 + x3, x(0) * x(1));
            out(3) = cplx(x(0) - x3 * x3, 2.0);
        }
        return out;
    };
}

CartesianField harmonic_spinor(int k) {
    return [k](const Eigen::VectorXd& x) {
        const cplx z(x(0), x(1));
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2);
        if (k % 2 == 0) out(1) = std::pow(std::conj(z), k);
        else out(0) = std::pow(z, k);
        return out;
    };
}

PolarField polar_view(CartesianField u) {
    return [u = std::move(u)](double t0, double tau, double theta) {
        const double r = std::exp(t0 + tau);
        Eigen::VectorXd x(2);
        x << r * std::cos(theta), r * std::sin(theta);
        const Eigen::VectorXcd v = u(x);
        LocalSpinor out;
        out.v = v.head<2>();
        return out;
    };
}

double shell_mass(const PolarField& f, double t_a, double t_b, double weight, int angular) {
    if (!(t_a < t_b)) throw std::invalid_argument("shell_mass: need t_a < t_b");
    if (angular < 4) throw std::invalid_argument("shell_mass: too few angular nodes");
    using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double dtheta = 2.0 * std::numbers::pi / angular;
    auto ring = [&](double t) {
        double acc = 0.0;
        for (int j = 0; j < angular; ++j) {
            const LocalSpinor s = f(t, 0.0, -std::numbers::pi + (j + 0.5) * dtheta);
            const double n2 = s.v.squaredNorm();
            if (n2 > 0.0) acc += std::exp(2.0 * s.log_scale + (2.0 + weight) * t) * n2;
        }
        return acc * dtheta;
    };
    double err = 0.0;
    return Rule::integrate(ring, t_a, t_b, 15, 1e-14, &err);
}

}  // namespace diracuc
