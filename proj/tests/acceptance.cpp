// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// `acceptance --only N` runs a single criterion.

#include "diracuc/kelvin.hpp"
#include "diracuc/mollifier.hpp"
#include "diracuc/radii.hpp"
#include "diracuc/verify.hpp"

#include <CLI11.hpp>
#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace diracuc;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Counterexample build(SchedulePreset preset, double eps = 0.1, std::optional<int> k0 = std::nullopt) {
    CounterexampleConfig cfg;
    cfg.preset = preset;
    cfg.epsilon = eps;
    cfg.k0 = k0;
    return Counterexample::build(cfg);
}

double paper_log_rho(int k, int j) { return -std::exp(std::pow(k + j / 6.0, 2)); }

// --- 1 -----------------------------------------------------------------------

Outcome cutoff_suite() {
    Outcome o;
    for (double d : {0.01, 0.09, 0.2, 0.24}) {
        const CutoffProfile p(d);
        const CheckReport r = check_cutoff(p, 10000);
        o.require(r.pass, "delta=" + fmt("%g", d) + " shape properties, " + r.detail);
        o.require(std::abs(p.derivative(0.5) - (1.0 + d)) <= 1e-10, "delta=" + fmt("%g", d) + " chi'(1/2) = 1+delta");
        double worst = -1.0;
        for (int i = 0; i <= 5000; ++i) {
            const double s = 0.5 * i / 5000.0;
            worst = std::max(worst, p.value(s) - s);
        }
        o.require(worst <= 1e-12, "delta=" + fmt("%g", d) + " chi(s) <= s on [0,1/2], max excess " + fmt("%.3g", worst));
    }
    return o;
}

// --- 2 -----------------------------------------------------------------------

bool raw_conditions(int k, double delta) {
    const double l0 = paper_log_rho(k, 0), l1 = paper_log_rho(k, 1), l2 = paper_log_rho(k, 2),
                 l3 = paper_log_rho(k, 3), l4 = paper_log_rho(k, 4), l5 = paper_log_rho(k, 5);
    const double c = 1.0 / (1.0 - l1 / l2);
    const double ct = 1.0 / (1.0 - l4 / l5);
    return c <= 1.0 + delta && 1.0 / (l2 - l3) <= delta && 1.0 / (l3 - l4) <= delta && ct <= 1.0 + delta &&
           1.0 / std::abs(l0) <= 0.5;
}

int brute_force_k0(int k_max, double delta) {
    for (int k = 1; k <= k_max; ++k) {
        bool ok = true;
        for (int kk = k; kk <= k_max && ok; ++kk) ok = raw_conditions(kk, delta);
        if (ok) return k;
    }
    return -1;
}

Outcome schedule_suite() {
    Outcome o;
    const RadiiSchedule sch(SchedulePreset::paper, RadiiSchedule::kPaperMaxK);
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double c_closed = 1.0 + 1.0 / (std::exp(k / 3.0 + 1.0 / 12.0) - 1.0);
        const double ct_closed = 1.0 + 1.0 / (std::exp(k / 3.0 + 1.0 / 4.0) - 1.0);
        const double c_ratio = 1.0 / (1.0 - paper_log_rho(k, 1) / paper_log_rho(k, 2));
        const double ct_ratio = 1.0 / (1.0 - paper_log_rho(k, 4) / paper_log_rho(k, 5));
        const BandConstants bc = sch.band_constants(k);
        for (double e : {c_closed - c_ratio, ct_closed - ct_ratio, bc.c - c_ratio, bc.c_tilde - ct_ratio})
            worst = std::max(worst, std::abs(e));
    }
    o.require(worst <= 1e-12, "c_k, c~_k closed forms vs ratios, k in [1,20], max error " + fmt("%.3g", worst));

    const RadiiSchedule def(SchedulePreset::paper, build(SchedulePreset::paper).schedule().k_max());
    const double d_small = select_delta(0.1);
    for (const auto& [delta, want] : {std::pair{0.2, 6}, std::pair{d_small, 8}}) {
        const int got = def.select_k0(delta);
        const int scan = brute_force_k0(def.k_max(), delta);
        o.require(got == want && scan == want,
                  "select_k0(" + fmt("%.4f", delta) + ") = " + std::to_string(got) + ", scan = " + std::to_string(scan));
    }
    return o;
}

// --- 3 -----------------------------------------------------------------------

Outcome identity_suite() {
    Outcome o;
    const SampleGrid grid{48, 32, 0.1};
    const CheckReport m = check_identity(build(SchedulePreset::mild), grid, {}, 1e-6, Exec::parallel, 3);
    o.require(m.pass && m.points >= 3u * 6u * 48u * 32u,
              "mild: " + std::to_string(m.points) + " points, worst " + to_logmag_string(m.worst_value) + " < 1e-6");
    const CheckReport p = check_identity(build(SchedulePreset::paper), grid, {}, 1e-5, Exec::parallel, 3);
    o.require(p.pass, "paper factored: " + std::to_string(p.points) + " points, worst " +
                          fmt("%.3g", p.worst_value.to_double()) + " < 1e-5");
    return o;
}

// --- 4 -----------------------------------------------------------------------

Outcome bound_suite() {
    Outcome o;
    const Counterexample ce = build(SchedulePreset::paper, 0.1);
    const CheckReport r = check_potential_bound(ce, {}, Exec::parallel, 4);
    const double worst = r.worst_value.to_double();
    o.require(r.pass && worst <= 0.6, "refined worst opnorm*|z| = " + fmt("%.12f", worst) + " <= 0.6 at " + r.region);
    o.require(worst > 0.5 - 1e-9, "budget used: worst > 1/2 - 1e-9");

    // Grid values through an SVD, independent of the closed-form norm.
    double svd_worst = 0.0;
    for (int k = ce.k0(); k <= ce.k0() + 3; ++k)
        for (int j = 0; j < 6; ++j)
            for (const PolarPoint& p : band_points(ce, Region::band(k, j), {}, 0.0)) {
                const Eigen::Matrix2cd m = ce.V_local(p.t, p.theta).m;
                svd_worst = std::max(svd_worst, Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues()(0));
            }
    o.require(svd_worst <= 0.6 && svd_worst <= worst + 1e-12, "SVD grid worst " + fmt("%.12f", svd_worst));
    return o;
}

// --- 5 -----------------------------------------------------------------------

Outcome decay_suite() {
    Outcome o;
    const Counterexample ce = build(SchedulePreset::paper);
    const CheckReport d = check_decay(ce, {});
    o.require(d.pass, "logmag|u| <= log 2 + k t, margin " + to_logmag_string(d.worst_margin));
    const std::vector<int> ks = {1, 5, 10};
    o.require(check_vanishing_origin(ce, ks).pass, "vanishing check for k in {1,5,10}");
    for (const VanishingSeries& s : origin_vanishing_series(ce, ks)) {
        const bool range = !s.m.empty() && s.m.front() == std::max(s.k, ce.k0()) &&
                           s.m.back() == ce.schedule().k_max() - 1;
        o.require(s.strictly_decreasing && range,
                  "k=" + std::to_string(s.k) + ": " + std::to_string(s.m.size()) + " radii, slope " + fmt("%.4g", s.slope));
    }
    return o;
}

// --- 6 -----------------------------------------------------------------------

Outcome continuity_suite() {
    Outcome o;
    for (SchedulePreset p : {SchedulePreset::paper, SchedulePreset::mild}) {
        const CheckReport r = check_continuity(build(p), 64, 4);
        o.require(r.pass && r.worst_value.to_double() <= 1e-12,
                  to_string(p) + ": " + std::to_string(r.points) + " seam samples, worst " + to_logmag_string(r.worst_value));
    }
    return o;
}

// --- 7 -----------------------------------------------------------------------

Outcome kelvin_suite() {
    Outcome o;
    for (const CheckReport& r : run_kelvin_checks()) {
        if (r.name == "kelvin_involution" || r.name.rfind("kelvin_commutation", 0) == 0)
            o.require(r.pass, r.name + " " + r.region + ", worst " + fmt("%.3g", r.worst_value.to_double()));
    }

    // Plain shell L^2: int_{a<|x|<b} |u_K|^2 against int_{1/b<|y|<1/a} |u|^2.
    const CliffordSet cl = clifford(2);
    Eigen::VectorXd centre(2);
    centre << 0.4, 0.1;
    const CartesianField u = gaussian_spinor(cl, centre, 0.8);
    const double a = 0.5, b = 2.0;
    const double image = shell_mass(polar_view(KelvinField(cl, u).as_field()), std::log(a), std::log(b));
    const double source = shell_mass(polar_view(u), -std::log(b), -std::log(a));
    const double weighted = shell_mass(polar_view(u), -std::log(b), -std::log(a), -2.0);
    const double rel = std::abs(image - source) / source;
    o.require(rel <= 1e-8, "shell L^2 " + fmt("%.10g", image) + " vs " + fmt("%.10g", source) + ", rel diff " +
                               fmt("%.3g", rel) + " (|y|^-2 weighted: " + fmt("%.3g", std::abs(image - weighted) / image) + ")");

    const InfinityExample psi(build(SchedulePreset::paper));
    o.require(check_infinity_support(psi, {}).pass, "psi = 0 on |x| < 1");
    const CheckReport bound = check_infinity_bound(psi, {});
    o.require(bound.pass, "psi bound, worst " + fmt("%.12f", bound.worst_value.to_double()));
    const std::vector<int> ks = {1, 5, 10};
    o.require(check_vanishing_infinity(psi, ks).pass, "psi vanishing at infinity, k in {1,5,10}");
    return o;
}

// --- 8 -----------------------------------------------------------------------

Outcome negative_control() {
    Outcome o;
    const Counterexample ce = build(SchedulePreset::paper, 0.1, 2);
    const CheckReport r = check_potential_bound(ce, {});
    o.require(!r.pass && r.violation().sign > 0,
              "k0=2: worst " + fmt("%.6f", r.worst_value.to_double()) + ", violation " + to_logmag_string(r.violation()));
    return o;
}

struct Criterion {
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    bool verbose = false;
    app.add_option("--only", only, "Run one criterion")->check(CLI::Range(1, 8));
    app.add_flag("-v,--verbose", verbose, "Print every sub-check");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {"cutoff shape for delta in {0.01, 0.09, 0.2, 0.24}", cutoff_suite},
        {"schedule closed forms and k0 selection", schedule_suite},
        {"finite-difference identity D u = V u", identity_suite},
        {"potential bound opnorm(V)|z| <= 1/2 + eps, sharp", bound_suite},
        {"decay and vanishing at the origin", decay_suite},
        {"continuity across seams", continuity_suite},
        {"inversion suite", kelvin_suite},
        {"negative control k0 = 2", negative_control},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only && id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d: %s: %s (%.1fs)\n", id, o.pass ? "PASS" : "FAIL", criteria[i].title, secs);
        if (verbose || !o.pass || only)
            for (const std::string& n : o.notes) std::printf("    %s\n", n.c_str());
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
