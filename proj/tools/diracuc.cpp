// diracuc: build the glued counterexample, run the verification checks and
// dump plot data.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 bad invocation.

#include "diracuc/dirac.hpp"
#include "diracuc/kelvin.hpp"
#include "diracuc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using diracuc::CheckReport;
using diracuc::Counterexample;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double epsilon = 0.1;
    std::optional<double> delta;
    std::string schedule = "paper";
    std::optional<int> k_max;
    std::optional<int> k0;
    int radial_samples = 48;
    int theta_samples = 32;
    double fd_step = 1e-5;
    int fd_order = 2;
    std::optional<double> tol;
    std::string out;
    std::string format = "json";
    bool serial = false;

    // sample
    std::string what = "potential-bound";
    std::optional<int> k;
    double theta = 0.0;
};

void add_common(CLI::App* app, RunConfig& cfg) {
    app->add_option("--epsilon", cfg.epsilon, "Budget above 1/2 in the potential bound")
        ->check(CLI::PositiveNumber);
    app->add_option("--delta", cfg.delta, "Cutoff parameter (default: derived from epsilon)");
    app->add_option("--schedule", cfg.schedule, "Radii schedule")->check(CLI::IsMember({"paper", "mild"}));
    app->add_option("--k-max", cfg.k_max, "Number of annuli to build");
    app->add_option("--k0", cfg.k0, "First annulus (default: smallest admissible, made even)");
    app->add_option("--radial-samples", cfg.radial_samples, "Radial samples per band")->check(CLI::Range(2, 100000));
    app->add_option("--theta-samples", cfg.theta_samples, "Angular samples per band")->check(CLI::Range(2, 100000));
    app->add_option("--fd-step", cfg.fd_step, "Finite-difference step in t and theta")->check(CLI::PositiveNumber);
    app->add_option("--fd-order", cfg.fd_order, "Central difference order")->check(CLI::IsMember({2, 4}));
    app->add_option("--tol", cfg.tol, "Identity residual tolerance")->check(CLI::PositiveNumber);
    app->add_option("--out", cfg.out, "Write output here instead of stdout");
    app->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app->add_flag("--serial", cfg.serial, "Run grid sweeps on one thread");
}

Counterexample build_counterexample(const RunConfig& cfg, diracuc::OuterPotential outer = {}) {
    if (cfg.delta) {
        const double d = *cfg.delta;
        if (!(d > 0.0 && d < 0.25)) throw UsageError("--delta must lie in (0, 1/4)");
        if (d * d + d > cfg.epsilon) throw UsageError("--delta must satisfy delta^2 + delta <= epsilon");
    }
    diracuc::CounterexampleConfig c;
    c.epsilon = cfg.epsilon;
    c.delta = cfg.delta;
    c.preset = diracuc::parse_preset(cfg.schedule);
    c.k_max = cfg.k_max;
    c.k0 = cfg.k0;
    c.outer = outer;
    try {
        return Counterexample::build(c);
    } catch (const diracuc::ConfigError& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

diracuc::VerifyOptions verify_options(const RunConfig& cfg) {
    diracuc::VerifyOptions o;
    o.grid.radial = cfg.radial_samples;
    o.grid.angular = cfg.theta_samples;
    o.stencil.h_t = cfg.fd_step;
    o.stencil.h_theta = cfg.fd_step;
    o.stencil.order = cfg.fd_order;
    o.identity_tol = cfg.tol.value_or(0.0);
    o.exec = cfg.serial ? diracuc::Exec::serial : diracuc::Exec::parallel;
    return o;
}

ordered_json parameters_json(const RunConfig& cfg, const Counterexample* ce) {
    ordered_json p;
    p["epsilon"] = cfg.epsilon;
    if (ce) {
        p["delta"] = ce->delta();
        p["k0"] = ce->k0();
        p["k_max"] = ce->schedule().k_max();
    }
    p["schedule"] = cfg.schedule;
    p["radial_samples"] = cfg.radial_samples;
    p["theta_samples"] = cfg.theta_samples;
    p["fd_step"] = cfg.fd_step;
    p["fd_order"] = cfg.fd_order;
    const double tol = cfg.tol.value_or(diracuc::default_identity_tol(diracuc::parse_preset(cfg.schedule)));
    p["tol"] = tol;
    return p;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open --out file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int emit_reports(const RunConfig& cfg, const Counterexample* ce, const std::vector<CheckReport>& reports) {
    const bool ok = diracuc::all_pass(reports);
    Output out(cfg.out);
    if (cfg.format == "csv") {
        out.stream() << "name,region,points,worst_margin_logmag,worst_value_logmag,pass\n";
        for (const CheckReport& r : reports) {
            out.stream() << csv_escape(r.name) << ',' << csv_escape(r.region) << ',' << r.points << ','
                         << diracuc::to_logmag_string(r.worst_margin) << ','
                         << diracuc::to_logmag_string(r.worst_value) << ',' << (r.pass ? "true" : "false") << '\n';
        }
    } else {
        ordered_json j;
        j["parameters"] = parameters_json(cfg, ce);
        j["checks"] = ordered_json::array();
        for (const CheckReport& r : reports) {
            ordered_json c;
            c["name"] = r.name;
            c["region"] = r.region;
            c["points"] = r.points;
            c["worst_margin_logmag"] = diracuc::to_logmag_string(r.worst_margin);
            c["worst_value_logmag"] = diracuc::to_logmag_string(r.worst_value);
            c["pass"] = r.pass;
            if (!r.detail.empty()) c["detail"] = r.detail;
            j["checks"].push_back(c);
        }
        j["all_pass"] = ok;
        out.stream() << j.dump(2) << '\n';
    }
    return ok ? kExitPass : kExitFail;
}

// --- subcommands -------------------------------------------------------------

int run_build(const RunConfig& cfg) {
    const Counterexample ce = build_counterexample(cfg);
    const diracuc::RadiiSchedule& sch = ce.schedule();
    Output out(cfg.out);
    if (cfg.format == "csv") {
        out.stream() << "k,j,log_rho\n";
        for (int k = ce.k0(); k <= sch.k_max(); ++k)
            for (int j = 0; j < (k == sch.k_max() ? 1 : 6); ++j)
                out.stream() << k << ',' << j << ',' << number(sch.log_rho(k, j)) << '\n';
        return kExitPass;
    }
    ordered_json j;
    j["parameters"] = parameters_json(cfg, &ce);
    j["k0_admissible"] = ce.k0_admissible();
    ordered_json annuli = ordered_json::array();
    for (int k = ce.k0(); k <= sch.k_max(); ++k) {
        ordered_json a;
        a["k"] = k;
        std::vector<double> lr;
        for (int jj = 0; jj <= 6 && (k < sch.k_max() || jj == 0); ++jj) lr.push_back(sch.log_rho(k, jj));
        a["log_rho"] = lr;
        const diracuc::BandConstants bc = sch.band_constants(k);
        a["c"] = bc.c;
        a["c_tilde"] = bc.c_tilde;
        const diracuc::K0Conditions kc = sch.k0_conditions(k, ce.delta());
        a["conditions"] = {{"slope_inner", kc.slope_inner}, {"gap_23", kc.gap_23}, {"gap_34", kc.gap_34},
                           {"slope_outer", kc.slope_outer}, {"cap", kc.cap}};
        annuli.push_back(a);
    }
    j["annuli"] = annuli;
    out.stream() << j.dump(2) << '\n';
    return kExitPass;
}

int run_check(const RunConfig& cfg) {
    const Counterexample ce = build_counterexample(cfg);
    return emit_reports(cfg, &ce, diracuc::run_all(ce, verify_options(cfg)));
}

int run_infinity(const RunConfig& cfg) {
    const Counterexample ce = build_counterexample(cfg);
    return emit_reports(cfg, &ce, diracuc::run_infinity(ce, verify_options(cfg)));
}

int run_kelvin(const RunConfig& cfg) {
    diracuc::KelvinCheckOptions o;
    if (cfg.tol) o.lemma_tol = *cfg.tol;
    return emit_reports(cfg, nullptr, diracuc::run_kelvin_checks(o));
}

int run_sample(const RunConfig& cfg) {
    using diracuc::Region;
    const Counterexample ce = build_counterexample(cfg);
    const diracuc::VerifyOptions opts = verify_options(cfg);
    const int n = cfg.radial_samples;
    const double theta = diracuc::normalize_angle(cfg.theta);

    std::vector<std::string> columns{"t", "theta"};
    std::vector<std::vector<double>> rows;

    auto t_nodes = [n](double lo, double hi, double margin) {
        std::vector<double> ts;
        const double a = lo + margin * (hi - lo), b = hi - margin * (hi - lo);
        for (int i = 0; i < n; ++i) ts.push_back(a + (b - a) * i / (n - 1));
        return ts;
    };

    if (cfg.what == "outer-identity") {
        // Outer cap between rho_{k0} and 1, where the cutoff is strictly between 0 and 1.
        const Counterexample alt = build_counterexample(cfg, diracuc::OuterPotential::log_derivative);
        columns.insert(columns.end(), {"residual_published", "residual_log_derivative"});
        for (double t : t_nodes(ce.schedule().log_rho(ce.k0(), 0), 0.0, 0.05))
            rows.push_back({t, theta, diracuc::dirac_residual(ce, {t, theta}, opts.stencil),
                            diracuc::dirac_residual(alt, {t, theta}, opts.stencil)});
    } else {
        const int k = cfg.k.value_or(ce.k0());
        if (k < ce.k0() || k > ce.k_last()) {
            throw UsageError("--k must lie in [" + std::to_string(ce.k0()) + ", " + std::to_string(ce.k_last()) + "]");
        }
        if (cfg.what == "potential-bound") columns.push_back("opnorm_times_r");
        else if (cfg.what == "modulus") columns.push_back("log_abs_u");
        else columns.push_back("residual");
        for (int j = 0; j < 6; ++j) {
            const Region band = Region::band(k, j);
            const auto [lo, hi] = ce.t_range(band);
            const double margin = cfg.what == "residual" ? opts.grid.margin : 0.0;
            for (double t : t_nodes(lo, hi, margin)) {
                double v = 0.0;
                if (cfg.what == "potential-bound") v = diracuc::opnorm2(ce.V_local(band, t, theta).m);
                else if (cfg.what == "modulus") v = ce.u_local(band, t, 0.0, theta).log_norm();
                else v = diracuc::dirac_residual(ce, {t, theta}, opts.stencil);
                rows.push_back({t, theta, v});
            }
        }
    }

    Output out(cfg.out);
    if (cfg.format == "json") {
        ordered_json j;
        j["parameters"] = parameters_json(cfg, &ce);
        j["what"] = cfg.what;
        j["columns"] = columns;
        ordered_json data = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json row = ordered_json::array();
            for (double x : r) {
                if (std::isfinite(x)) row.push_back(x);
                else row.push_back(number(x));
            }
            data.push_back(row);
        }
        j["rows"] = data;
        out.stream() << j.dump(2) << '\n';
        return kExitPass;
    }
    out.stream() << "# t = log r (r itself underflows on the paper schedule)\n";
    for (std::size_t c = 0; c < columns.size(); ++c) out.stream() << (c ? "," : "") << columns[c];
    out.stream() << '\n';
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) out.stream() << (c ? "," : "") << number(r[c]);
        out.stream() << '\n';
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counterexample construction and verification for the 2-D Dirac operator"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* build = app.add_subcommand("build", "Print delta, k0 and the radii schedule");
    auto* check = app.add_subcommand("check", "Run every verification check");
    auto* sample = app.add_subcommand("sample", "Dump plot data along t at fixed theta");
    auto* kelvin = app.add_subcommand("kelvin-check", "Inversion identities on smooth test spinors");
    auto* infinity = app.add_subcommand("infinity", "Checks for the inverted example at infinity");
    for (auto* sub : {build, check, sample, kelvin, infinity}) add_common(sub, cfg);
    sample->add_option("--what", cfg.what, "Quantity to sample")
        ->check(CLI::IsMember({"potential-bound", "modulus", "residual", "outer-identity"}));
    sample->add_option("--k", cfg.k, "Annulus to sample");
    sample->add_option("--theta", cfg.theta, "Fixed angle");
    sample->callback([&] {
        if (!sample->count("--format")) cfg.format = "csv";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*build) return run_build(cfg);
        if (*check) return run_check(cfg);
        if (*sample) return run_sample(cfg);
        if (*kelvin) return run_kelvin(cfg);
        if (*infinity) return run_infinity(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
