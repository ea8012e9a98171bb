#include "diracuc/verify.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace diracuc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCutoffTol = 1e-12;
constexpr double kSeamTol = 1e-12;

struct Sample {
    Region region;
    PolarPoint p;
    int group = 0;
};

double theta_node(int j, int angular) {
    return -std::numbers::pi + 2.0 * std::numbers::pi * (j + 0.5) / angular;
}

double t_node(double lo, double hi, double margin, int i, int n) {
    const double a = lo + margin * (hi - lo);
    const double b = hi - margin * (hi - lo);
    return a + (b - a) * static_cast<double>(i) / (n - 1);
}

int last_annulus(const Counterexample& ce, int span) { return std::min(ce.k0() + span - 1, ce.k_last()); }

CheckReport make_report(const Counterexample& ce, std::string name) {
    CheckReport r;
    r.name = std::move(name);
    r.params = parameters_of(ce);
    return r;
}

// Bands of annuli k0 .. k_hi followed by the outer cap up to |z| = 1.
std::vector<Sample> bound_samples(const Counterexample& ce, const SampleGrid& grid, int span) {
    std::vector<Sample> out;
    int group = 0;
    for (int k = ce.k0(); k <= last_annulus(ce, span); ++k) {
        for (int j = 0; j < 6; ++j, ++group) {
            const Region band = Region::band(k, j);
            for (const PolarPoint& p : band_points(ce, band, grid, 0.0)) out.push_back({band, p, group});
        }
    }
    const double lo = ce.schedule().log_rho(ce.k0(), 0);
    for (int i = 0; i < grid.radial; ++i)
        for (int j = 0; j < grid.angular; ++j)
            out.push_back({Region::outer(), {t_node(lo, 0.0, 0.0, i, grid.radial), theta_node(j, grid.angular)}, group});
    return out;
}

double bound_value(const Counterexample& ce, const Region& region, double t, double theta) {
    // V carries log_scale -t exactly, so opnorm(V) * |z| is the mantissa's norm.
    return opnorm2(ce.V_local(region, t, theta).m);
}

// Brent search on the radial segment around a band's grid maximum.
double refine_band_max(const Counterexample& ce, const Region& region, std::span<const Sample> samples,
                       std::span<const double> values, const SampleGrid& grid) {
    const auto it = std::max_element(values.begin(), values.end());
    const auto idx = static_cast<std::size_t>(it - values.begin());
    const int i = static_cast<int>(idx) / grid.angular;
    const double theta = samples[idx].p.theta;
    const auto [lo, hi] = region.is_outer() ? std::pair{ce.schedule().log_rho(ce.k0(), 0), 0.0}
                                            : ce.t_range(region);
    const double a = std::max(0, i - 1) / static_cast<double>(grid.radial - 1);
    const double b = std::min(grid.radial - 1, i + 1) / static_cast<double>(grid.radial - 1);
    auto neg = [&](double x) { return -bound_value(ce, region, lo + x * (hi - lo), theta); };
    const auto [x, f] = boost::math::tools::brent_find_minima(neg, a, b, 40);
    (void)x;
    return std::max(*it, -f);
}

struct SeriesCheck {
    double worst_step = -kInf;  // max of logmag(m+1) - logmag(m)
    std::string worst_region;
    std::size_t points = 0;
    bool pass = true;
    std::string detail;
};

SeriesCheck check_series(std::span<const VanishingSeries> series) {
    SeriesCheck out;
    int checked = 0;
    std::ostringstream note;
    for (const VanishingSeries& s : series) {
        if (s.m.size() < 2) {
            note << "k=" << s.k << " skipped (fewer than two radii); ";
            continue;
        }
        ++checked;
        out.points += s.m.size();
        for (std::size_t i = 0; i + 1 < s.value.size(); ++i) {
            const double step = s.value[i + 1].logmag - s.value[i].logmag;
            if (step > out.worst_step) {
                out.worst_step = step;
                out.worst_region = "k=" + std::to_string(s.k) + ",m=" + std::to_string(s.m[i + 1]);
            }
        }
        if (!s.strictly_decreasing || !(s.slope < 0.0)) out.pass = false;
        note << "k=" << s.k << " slope " << s.slope << "; ";
    }
    if (checked == 0) out.pass = false;
    out.detail = note.str();
    return out;
}

// worst value is the largest logmag step between consecutive radii.
void fill_series_report(CheckReport& r, const SeriesCheck& s) {
    r.points = s.points;
    r.region = s.worst_region;
    r.detail = s.detail;
    if (s.points == 0) {
        r.pass = false;
        r.detail += "no series had two radii";
        return;
    }
    r.worst_value = ExtReal::from_double(s.worst_step);
    r.worst_margin = ExtReal::from_double(-s.worst_step);
    r.pass = s.pass && s.worst_step < 0.0;
}

VanishingSeries make_series(int k, std::vector<int> ms, std::vector<double> log_r, std::vector<ExtReal> vals) {
    VanishingSeries s;
    s.k = k;
    s.m = std::move(ms);
    s.log_radius = std::move(log_r);
    s.value = std::move(vals);
    s.strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < s.value.size(); ++i)
        if (!(s.value[i + 1] < s.value[i])) s.strictly_decreasing = false;

    // Least squares of logmag against |log R|, rescaled to keep x^2 finite.
    const std::size_t n = s.m.size();
    if (n >= 2) {
        double xmax = 0.0;
        for (double lr : s.log_radius) xmax = std::max(xmax, std::abs(lr));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = std::abs(s.log_radius[i]) / xmax;
            const double y = s.value[i].logmag / xmax;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double dn = static_cast<double>(n);
        s.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    }
    return s;
}

}  // namespace

void SampleGrid::validate() const {
    if (radial < 2 || angular < 2) throw std::invalid_argument("sample grid needs at least 2 points per axis");
    if (!(margin >= 0.0 && margin < 0.4)) throw std::invalid_argument("sample grid margin must lie in [0, 0.4)");
}

RunParameters parameters_of(const Counterexample& ce) {
    return {ce.epsilon(), ce.delta(), ce.k0(), ce.schedule().k_max(), ce.schedule().preset()};
}

ExtReal CheckReport::violation() const {
    return worst_margin.sign < 0 ? -worst_margin : ExtReal::zero();
}

bool all_pass(std::span<const CheckReport> reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::vector<PolarPoint> band_points(const Counterexample& ce, const Region& band, const SampleGrid& grid,
                                    double margin) {
    grid.validate();
    const auto [lo, hi] = ce.t_range(band);
    if (!std::isfinite(hi)) throw std::invalid_argument("band_points: outer cap has no finite range");
    std::vector<PolarPoint> out;
    out.reserve(static_cast<std::size_t>(grid.radial) * grid.angular);
    for (int i = 0; i < grid.radial; ++i)
        for (int j = 0; j < grid.angular; ++j)
            out.push_back({t_node(lo, hi, margin, i, grid.radial), theta_node(j, grid.angular)});
    return out;
}

// ---------------------------------------------------------------------------

CheckReport check_cutoff(const CutoffProfile& cutoff, int samples) {
    if (samples < 2) throw std::invalid_argument("check_cutoff: need at least 2 samples");
    CheckReport r;
    r.name = "cutoff";
    r.region = "s in [0,1]";
    r.params.delta = cutoff.delta();

    const double slope = 1.0 + cutoff.delta();
    double worst = -kInf;  // largest violation, <= 0 when all properties hold
    std::string where;
    auto note = [&](double v, const std::string& what) {
        if (v > worst) {
            worst = v;
            where = what;
        }
    };
    double prev = cutoff.value(0.0);
    double sup_deriv = cutoff.derivative(0.5);
    for (int i = 0; i < samples; ++i) {
        const double s = static_cast<double>(i) / (samples - 1);
        const double v = cutoff.value(s);
        const double d = cutoff.derivative(s);
        sup_deriv = std::max(sup_deriv, d);
        note(-v - kCutoffTol, "chi >= 0");
        note(v - 1.0 - kCutoffTol, "chi <= 1");
        note(-d - kCutoffTol, "chi' >= 0");
        note(prev - v - kCutoffTol, "monotone");
        if (s <= 0.5) note(v - s - kCutoffTol, "chi(s) <= s");
        else note(v - (slope * s - 0.5 * cutoff.delta()) - kCutoffTol, "chi(s) <= (1+delta)s - delta/2");
        prev = v;
    }
    note(std::abs(cutoff.value(0.5) - 0.5) - kCutoffTol, "chi(1/2) = 1/2");
    note(std::abs(sup_deriv - slope) - 1e-10, "sup chi' = 1 + delta");
    note(std::abs(cutoff.value(-0.5)) + std::abs(cutoff.value(1.5) - 1.0) - kCutoffTol, "constant outside [0,1]");

    r.points = static_cast<std::size_t>(samples);
    r.worst_value = ExtReal::from_double(worst);
    r.worst_margin = ExtReal::from_double(-worst);
    r.pass = worst <= 0.0;
    r.detail = "tightest: " + where;
    return r;
}

CheckReport check_k0_conditions(const Counterexample& ce) {
    CheckReport r = make_report(ce, "k0_conditions");
    const RadiiSchedule& sch = ce.schedule();
    const double d = ce.delta();
    double margin = kInf;
    for (int k = ce.k0(); k <= sch.k_max(); ++k) {
        const BandConstants bc = sch.band_constants(k);
        const double l0 = sch.log_rho(k, 0), l2 = sch.log_rho(k, 2), l3 = sch.log_rho(k, 3),
                     l4 = sch.log_rho(k, 4);
        const double m = std::min({1.0 + d - bc.c, d - 1.0 / (l2 - l3), d - 1.0 / (l3 - l4),
                                   1.0 + d - bc.c_tilde, 0.5 - 1.0 / std::abs(l0)});
        if (m < margin) {
            margin = m;
            r.region = "k=" + std::to_string(k);
        }
        ++r.points;
    }
    r.worst_margin = ExtReal::from_double(margin);
    r.worst_value = ExtReal::from_double(-margin);
    r.pass = margin >= 0.0 && ce.k0_admissible();
    return r;
}

CheckReport check_potential_bound(const Counterexample& ce, const SampleGrid& grid, Exec exec, int span) {
    grid.validate();
    CheckReport r = make_report(ce, "potential_bound");
    const std::vector<Sample> samples = bound_samples(ce, grid, span);
    const std::vector<double> values = evaluate(
        samples.size(),
        [&](std::size_t i) { return bound_value(ce, samples[i].region, samples[i].p.t, samples[i].p.theta); },
        exec);

    double worst = -kInf;
    std::size_t begin = 0;
    while (begin < samples.size()) {
        std::size_t end = begin;
        while (end < samples.size() && samples[end].group == samples[begin].group) ++end;
        const std::span<const Sample> gs(samples.data() + begin, end - begin);
        const std::span<const double> gv(values.data() + begin, end - begin);
        const double m = refine_band_max(ce, gs.front().region, gs, gv, grid);
        if (m > worst) {
            worst = m;
            r.region = to_string(gs.front().region);
        }
        begin = end;
    }
    const double limit = 0.5 + ce.epsilon();
    r.points = samples.size();
    r.worst_value = ExtReal::from_double(worst);
    r.worst_margin = ExtReal::from_double(limit - worst);
    r.pass = worst <= limit;
    return r;
}

double default_identity_tol(SchedulePreset preset) { return preset == SchedulePreset::mild ? 1e-6 : 1e-5; }

CheckReport check_identity(const Counterexample& ce, const SampleGrid& grid, const FDStencil& st, double tol,
                           Exec exec, int span) {
    grid.validate();
    CheckReport r = make_report(ce, "identity");
    std::vector<Sample> samples;
    for (int k = ce.k0(); k <= last_annulus(ce, span); ++k)
        for (int j = 0; j < 6; ++j)
            for (const PolarPoint& p : band_points(ce, Region::band(k, j), grid, grid.margin))
                samples.push_back({Region::band(k, j), p});
    for (int i = 0; i < grid.radial; ++i)
        for (int j = 0; j < grid.angular; ++j)
            samples.push_back({Region::outer(), {t_node(0.0, 1.0, grid.margin, i, grid.radial),
                                                 theta_node(j, grid.angular)}});

    const std::vector<double> values =
        evaluate(samples.size(), [&](std::size_t i) { return dirac_residual(ce, samples[i].p, st); }, exec);
    const Extremum e = reduce_max(values);
    r.points = samples.size();
    r.region = to_string(samples[e.index].region);
    r.worst_value = ExtReal::from_double(e.value);
    r.worst_margin = ExtReal::from_double(tol - e.value);
    r.pass = e.value < tol;
    std::ostringstream os;
    os << "tol " << tol << ", fd order " << st.order;
    r.detail = os.str();
    return r;
}

CheckReport check_decay(const Counterexample& ce, const SampleGrid& grid, Exec exec) {
    grid.validate();
    CheckReport r = make_report(ce, "decay");
    std::vector<Sample> samples;
    for (int k = ce.k0(); k <= ce.k_last(); ++k)
        for (int j = 0; j < 6; ++j)
            for (const PolarPoint& p : band_points(ce, Region::band(k, j), grid, 0.0))
                samples.push_back({Region::band(k, j), p});

    // Annulus k is the largest exponent whose disc contains the point, hence the tightest.
    const double log2 = std::log(2.0);
    const std::vector<double> values = evaluate(
        samples.size(),
        [&](std::size_t i) { return ce.log_excess(samples[i].p, samples[i].region.k) - log2; }, exec);
    const Extremum e = reduce_max(values);
    r.points = samples.size();
    r.region = to_string(samples[e.index].region);
    r.worst_value = ExtReal::from_double(e.value);
    r.worst_margin = ExtReal::from_double(-e.value);
    r.pass = e.value <= 0.0;
    r.detail = "worst is log|u| - log 2 - k log|z|";
    return r;
}

CheckReport check_continuity(const Counterexample& ce, int angles, int span) {
    CheckReport r = make_report(ce, "continuity");
    struct Seam {
        Region inner, outer;
        double t;
    };
    std::vector<Seam> seams;
    const RadiiSchedule& sch = ce.schedule();
    seams.push_back({Region::band(ce.k0(), 0), Region::outer(), sch.log_rho(ce.k0(), 0)});
    for (int k = ce.k0(); k <= last_annulus(ce, span); ++k) {
        for (int j = 1; j < 6; ++j) seams.push_back({Region::band(k, j), Region::band(k, j - 1), sch.log_rho(k, j)});
        if (k + 1 <= ce.k_last()) seams.push_back({Region::band(k + 1, 0), Region::band(k, 5), sch.log_rho(k, 6)});
    }

    double worst = 0.0;
    for (const Seam& s : seams) {
        for (int a = 0; a < angles; ++a) {
            const double th = theta_node(a, angles);
            const LocalSpinor x = ce.u_local(s.inner, s.t, 0.0, th);
            const LocalSpinor y = ce.u_local(s.outer, s.t, 0.0, th);
            const double lx = x.log_norm(), ly = y.log_norm();
            double err = 0.0;
            if (std::isfinite(lx) != std::isfinite(ly)) {
                err = kInf;
            } else if (std::isfinite(lx)) {
                const double dlog = std::abs(lx - ly) / std::max(1.0, std::abs(lx));
                const double ddir = (x.v / x.v.norm() - y.v / y.v.norm()).norm();
                err = std::max(dlog, ddir);
            }
            if (err > worst || r.region.empty()) {
                worst = std::max(worst, err);
                r.region = to_string(s.outer) + "|" + to_string(s.inner);
            }
            ++r.points;
        }
    }
    r.worst_value = ExtReal::from_double(worst);
    r.worst_margin = ExtReal::from_double(kSeamTol - worst);
    r.pass = worst <= kSeamTol;
    return r;
}

// ---------------------------------------------------------------------------

ExtReal origin_mass_bound(const Counterexample& ce, int m, int weight) {
    const RadiiSchedule& sch = ce.schedule();
    if (m < ce.k0() || m > sch.k_max()) throw std::out_of_range("origin_mass_bound: m outside [k0, k_max]");
    // int 4 |x|^{2h + weight} over {t_lo < log|x| < t_hi} = 8 pi / p [e^{p t}], p = 2h + 2 + weight.
    auto shell = [](int p, double t_lo, double t_hi) {
        const double c = std::log(8.0 * std::numbers::pi / p);
        return ExtReal::from_log(c + p * t_hi) - ExtReal::from_log(c + p * t_lo);
    };
    ExtReal total = ExtReal::zero();
    for (int h = m; h < sch.k_max(); ++h) {
        const int p = 2 * h + 2 + weight;
        if (p <= 0) throw std::invalid_argument("origin_mass_bound: weight too negative");
        total = total + shell(p, sch.log_rho(h + 1, 0), sch.log_rho(h, 0));
    }
    const int p_tail = 2 * sch.k_max() + 2 + weight;
    total = total + ExtReal::from_log(std::log(8.0 * std::numbers::pi / p_tail) + p_tail * sch.log_rho(sch.k_max(), 0));
    return total;
}

ExtReal origin_mass_quadrature(const Counterexample& ce, int m, int radial_per_band, int angular) {
    if (radial_per_band < 2 || angular < 1) throw std::invalid_argument("origin_mass_quadrature: grid too small");
    ExtReal total = ExtReal::zero();
    for (int k = m; k <= ce.k_last(); ++k) {
        for (int j = 0; j < 6; ++j) {
            const Region band = Region::band(k, j);
            const auto [lo, hi] = ce.t_range(band);
            const double dt = (hi - lo) / (radial_per_band - 1);
            for (int i = 0; i < radial_per_band; ++i) {
                const double t = lo + i * dt;
                const double w = (i == 0 || i == radial_per_band - 1) ? 0.5 * dt : dt;
                double ls = 0.0;
                double ring = 0.0;  // mean |v|^2 over theta
                for (int a = 0; a < angular; ++a) {
                    const LocalSpinor u = ce.u_local(band, t, 0.0, theta_node(a, angular));
                    ls = u.log_scale;
                    ring += u.v.squaredNorm() / angular;
                }
                if (ring == 0.0) continue;
                total = total + ExtReal::from_log(std::log(2.0 * std::numbers::pi * w * ring) + 2.0 * ls + 2.0 * t);
            }
        }
    }
    return total;
}

std::vector<VanishingSeries> origin_vanishing_series(const Counterexample& ce, std::span<const int> k_list) {
    std::vector<VanishingSeries> out;
    for (int k : k_list) {
        std::vector<int> ms;
        std::vector<double> lr;
        std::vector<ExtReal> vals;
        for (int m = std::max(k, ce.k0()); m <= ce.k_last(); ++m) {
            const double L = ce.schedule().log_rho(m, 0);
            ms.push_back(m);
            lr.push_back(L);
            vals.push_back(origin_mass_bound(ce, m) * ExtReal::from_log(-k * L));
        }
        out.push_back(make_series(k, std::move(ms), std::move(lr), std::move(vals)));
    }
    return out;
}

std::vector<VanishingSeries> infinity_vanishing_series(const InfinityExample& psi, std::span<const int> k_list) {
    // R^k int_{|x| > R} |psi|^2 = R^k int_{|y| < 1/R} |y|^{-2} |u|^2 with R = 1 / rho_m.
    const Counterexample& ce = psi.base();
    std::vector<VanishingSeries> out;
    for (int k : k_list) {
        std::vector<int> ms;
        std::vector<double> lr;
        std::vector<ExtReal> vals;
        for (int m = std::max(k, ce.k0()); m <= ce.k_last(); ++m) {
            const double L = ce.schedule().log_rho(m, 0);
            ms.push_back(m);
            lr.push_back(-L);
            vals.push_back(origin_mass_bound(ce, m, -2) * ExtReal::from_log(-k * L));
        }
        out.push_back(make_series(k, std::move(ms), std::move(lr), std::move(vals)));
    }
    return out;
}

CheckReport check_vanishing_origin(const Counterexample& ce, std::span<const int> k_list) {
    CheckReport r = make_report(ce, "vanishing_origin");
    fill_series_report(r, check_series(origin_vanishing_series(ce, k_list)));
    return r;
}

CheckReport check_mass_quadrature(const Counterexample& ce, const SampleGrid& grid) {
    grid.validate();
    CheckReport r = make_report(ce, "mass_quadrature");
    double worst = -kInf;  // log(quadrature / bound)
    for (int m = ce.k0(); m <= ce.k_last(); ++m) {
        const ExtReal q = origin_mass_quadrature(ce, m, 8 * grid.radial, 8);
        const ExtReal b = origin_mass_bound(ce, m);
        const double ratio = q.is_zero() ? -kInf : q.logmag - b.logmag;
        if (ratio > worst) {
            worst = ratio;
            r.region = "m=" + std::to_string(m);
        }
        ++r.points;
    }
    r.worst_value = ExtReal::from_log(worst);
    r.worst_margin = ExtReal::from_double(1.0) - r.worst_value;
    r.pass = worst <= 0.0;
    r.detail = "worst is quadrature / bound";
    return r;
}

CheckReport check_infinity_support(const InfinityExample& psi, const SampleGrid& grid) {
    grid.validate();
    CheckReport r = make_report(psi.base(), "infinity_support");
    r.region = "|x| < 1";
    double worst = -kInf;  // log |psi|
    for (int i = 0; i < grid.radial; ++i) {
        const double t = t_node(-8.0, -1e-9, 0.0, i, grid.radial);
        for (int j = 0; j < grid.angular; ++j) {
            worst = std::max(worst, psi.psi_local(t, 0.0, theta_node(j, grid.angular)).log_norm());
            ++r.points;
        }
    }
    r.worst_value = std::isfinite(worst) ? ExtReal::from_log(worst) : ExtReal::zero();
    r.worst_margin = -r.worst_value;
    r.pass = r.worst_value.is_zero();
    return r;
}

CheckReport check_infinity_bound(const InfinityExample& psi, const SampleGrid& grid, Exec exec, int span) {
    grid.validate();
    const Counterexample& ce = psi.base();
    CheckReport r = make_report(ce, "infinity_bound");
    const std::vector<Sample> samples = bound_samples(ce, grid, span);
    const std::vector<double> values = evaluate(
        samples.size(),
        [&](std::size_t i) { return opnorm2(psi.V_local(-samples[i].p.t, samples[i].p.theta).m); }, exec);
    const Extremum e = reduce_max(values);
    const double limit = 0.5 + ce.epsilon();
    r.points = samples.size();
    r.region = "inverted " + to_string(samples[e.index].region);
    r.worst_value = ExtReal::from_double(e.value);
    r.worst_margin = ExtReal::from_double(limit - e.value);
    r.pass = e.value <= limit;
    return r;
}

CheckReport check_vanishing_infinity(const InfinityExample& psi, std::span<const int> k_list) {
    CheckReport r = make_report(psi.base(), "vanishing_infinity");
    fill_series_report(r, check_series(infinity_vanishing_series(psi, k_list)));
    return r;
}

CheckReport check_infinity_identity(const InfinityExample& psi, const SampleGrid& grid, const FDStencil& st,
                                    double tol, Exec exec, int span) {
    const Counterexample& ce = psi.base();
    CheckReport r = make_report(ce, "infinity_identity");
    std::vector<Sample> samples;
    for (int k = ce.k0(); k <= last_annulus(ce, span); ++k)
        for (int j = 0; j < 6; ++j)
            for (const PolarPoint& p : band_points(ce, Region::band(k, j), grid, grid.margin))
                samples.push_back({Region::band(k, j), {-p.t, p.theta}});
    const std::vector<double> values =
        evaluate(samples.size(), [&](std::size_t i) { return psi.residual(samples[i].p, st); }, exec);
    const Extremum e = reduce_max(values);
    r.points = samples.size();
    r.region = "inverted " + to_string(samples[e.index].region);
    r.worst_value = ExtReal::from_double(e.value);
    r.worst_margin = ExtReal::from_double(tol - e.value);
    r.pass = e.value < tol;
    return r;
}

std::vector<CheckReport> run_all(const Counterexample& ce, const VerifyOptions& opts) {
    opts.grid.validate();
    const double tol = opts.identity_tol > 0.0 ? opts.identity_tol : default_identity_tol(ce.schedule().preset());
    const InfinityExample psi(ce);

    std::vector<CheckReport> out;
    out.push_back(check_cutoff(ce.cutoff()));
    out.back().params = parameters_of(ce);
    out.push_back(check_k0_conditions(ce));
    out.push_back(check_potential_bound(ce, opts.grid, opts.exec));
    out.push_back(check_identity(ce, opts.grid, opts.stencil, tol, opts.exec));
    out.push_back(check_decay(ce, opts.grid, opts.exec));
    out.push_back(check_continuity(ce));
    out.push_back(check_vanishing_origin(ce, opts.vanishing_k));
    if (ce.schedule().preset() == SchedulePreset::mild) out.push_back(check_mass_quadrature(ce, opts.grid));
    for (CheckReport& r : run_infinity(ce, opts)) out.push_back(std::move(r));
    return out;
}

std::vector<CheckReport> run_infinity(const Counterexample& ce, const VerifyOptions& opts) {
    opts.grid.validate();
    const double tol = opts.identity_tol > 0.0 ? opts.identity_tol : default_identity_tol(ce.schedule().preset());
    const InfinityExample psi(ce);
    std::vector<CheckReport> out;
    out.push_back(check_infinity_support(psi, opts.grid));
    out.push_back(check_infinity_bound(psi, opts.grid, opts.exec));
    out.push_back(check_infinity_identity(psi, opts.grid, opts.stencil, tol, opts.exec));
    out.push_back(check_vanishing_infinity(psi, opts.vanishing_k));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXd random_point(std::mt19937_64& rng, int n, double r_lo, double r_hi) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(std::log(r_lo), std::log(r_hi));
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = normal(rng);
    return std::exp(unif(rng)) * x.normalized();
}

CheckReport max_report(std::string name, std::string region, const std::vector<double>& values, double tol) {
    CheckReport r;
    r.name = std::move(name);
    r.region = std::move(region);
    const Extremum e = reduce_max(values);
    r.points = values.size();
    r.worst_value = ExtReal::from_double(e.value);
    r.worst_margin = ExtReal::from_double(tol - e.value);
    r.pass = e.value <= tol;
    return r;
}

}  // namespace

std::vector<CheckReport> run_kelvin_checks(const KelvinCheckOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::vector<CheckReport> out;

    for (int n : {2, 3}) {
        const CliffordSet cl = clifford(n);
        Eigen::VectorXd centre = Eigen::VectorXd::Constant(n, 0.3);
        const CartesianField u = gaussian_spinor(cl, centre);
        const KelvinField once(cl, u);
        const KelvinField twice(cl, once.as_field());
        std::vector<double> inv, unit;
        for (int i = 0; i < opts.involution_points; ++i) {
            const Eigen::VectorXd x = random_point(rng, n, 0.2, 5.0);
            const Eigen::VectorXcd a = u(x);
            inv.push_back((twice(x) - a).norm() / a.norm());
            std::normal_distribution<double> normal;
            Eigen::VectorXcd w(cl.N);
            for (int a = 0; a < cl.N; ++a) w(a) = cplx(normal(rng), normal(rng));
            unit.push_back(std::abs((kelvin_multiplier(cl, x) * w).norm() - w.norm()) / w.norm());
        }
        const std::string dim = "n=" + std::to_string(n);
        out.push_back(max_report("kelvin_involution", dim, inv, 1e-12));
        out.push_back(max_report("kelvin_unitarity", dim, unit, 1e-12));
    }

    {
        const CliffordSet cl = clifford(2);
        Eigen::VectorXd centre(2);
        centre << 0.4, -0.2;
        const CartesianField u = gaussian_spinor(cl, centre);
        std::vector<double> res;
        for (int i = 0; i < opts.points; ++i) res.push_back(check_lemma31(cl, u, random_point(rng, 2, 0.5, 2.0)));
        out.push_back(max_report("kelvin_commutation_gaussian", "n=2", res, opts.lemma_tol));

        const CartesianField e3 = harmonic_spinor(3);
        res.clear();
        for (int i = 0; i < opts.points; ++i) res.push_back(check_lemma31(cl, e3, random_point(rng, 2, 0.5, 2.0)));
        out.push_back(max_report("kelvin_commutation_harmonic", "n=2", res, 1e-8));
    }
    {
        const CliffordSet cl = clifford(3);
        const CartesianField u = polynomial_spinor(cl);
        std::vector<double> res;
        for (int i = 0; i < opts.points; ++i) res.push_back(check_lemma31(cl, u, random_point(rng, 3, 0.5, 2.0)));
        out.push_back(max_report("kelvin_commutation_polynomial", "n=3", res, opts.lemma_tol));
    }

    for (int n : {2, 3}) {
        const CliffordSet cl = clifford(n);
        const double gamma = 1.5, beta = 1.0;
        std::vector<Eigen::VectorXd> samples;
        for (int i = 0; i < opts.points; ++i) samples.push_back(random_point(rng, n, 0.2, 0.9));
        const TransportReport t = check_transport(cl, synthetic_transport_field(cl, gamma, beta), gamma,
                                                  beta * (gamma - 1.0), samples);
        CheckReport r;
        r.name = "kelvin_transport";
        r.region = "n=" + std::to_string(n) + ",gamma=1.5";
        r.points = static_cast<std::size_t>(t.points);
        const double worst = std::max(t.worst_source, t.worst_image);
        r.worst_value = ExtReal::from_double(worst);
        r.worst_margin = ExtReal::from_double(1.0 + 1e-8 - worst);
        r.pass = t.pass;
        std::ostringstream os;
        os << "image exponent " << transport_bound(gamma) << ", source ratio " << t.worst_source
           << ", image ratio " << t.worst_image;
        r.detail = os.str();
        out.push_back(r);
    }

    {
        const CliffordSet cl = clifford(2);
        Eigen::VectorXd centre(2);
        centre << 0.4, -0.2;
        const CartesianField g = gaussian_spinor(cl, centre);
        const PolarField u = polar_view(g);
        // transformed side through the Cartesian route, original side in polar form
        const PolarField uk = polar_view(KelvinField(cl, g).as_field());
        const double a = 0.5, b = 2.0;
        const double lhs = shell_mass(uk, std::log(a), std::log(b));
        const double rhs = shell_mass(u, -std::log(b), -std::log(a), -2.0);
        std::vector<double> rel{std::abs(lhs - rhs) / std::abs(rhs)};
        CheckReport r = max_report("kelvin_shell_mass_weighted", "0.5<|x|<2", rel, 1e-8);
        std::ostringstream os;
        os.precision(15);
        os << "transformed " << lhs << ", weighted original " << rhs;
        r.detail = os.str();
        out.push_back(r);
    }
    return out;
}

}  // namespace diracuc
