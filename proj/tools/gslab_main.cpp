#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gslab/dynsys.hpp"
#include "gslab/oracle.hpp"
#include "gslab/oscillation.hpp"
#include "gslab/report.hpp"

namespace {

using nlohmann::json;

std::string error_name(const gslab::Error& e) {
    if (dynamic_cast<const gslab::OutOfDomain*>(&e)) return "OutOfDomain";
    if (dynamic_cast<const gslab::EllipticityViolation*>(&e)) return "EllipticityViolation";
    if (dynamic_cast<const gslab::TailTooLarge*>(&e)) return "TailTooLarge";
    if (dynamic_cast<const gslab::HypothesisUnmet*>(&e)) return "HypothesisUnmet";
    if (dynamic_cast<const gslab::SignChange*>(&e)) return "SignChange";
    if (dynamic_cast<const gslab::UnsupportedDimension*>(&e)) return "UnsupportedDimension";
    if (dynamic_cast<const gslab::ConfigInvalid*>(&e)) return "ConfigInvalid";
    if (dynamic_cast<const gslab::SingularSystem*>(&e)) return "SingularSystem";
    if (dynamic_cast<const gslab::ContradictoryVerdicts*>(&e)) return "ContradictoryVerdicts";
    return "Error";
}

// Every flag that was explicitly passed overrides the config file; everything
// else keeps the file's value (or the built-in default).
struct FlagValues {
    std::string config_path;
    std::string family = "zero";
    double gamma = 1.0;
    double beta = 1.0;
    double A = 10.0;
    double c = 0.0;
    std::string table_path;
    int n = 2;
    double t_min = 0.0;
    double t_max = 40.0;
    double step = 1e-3;
    double tol = 1e-6;
    std::uint64_t seed = 42;
    int which = 1;
    std::string sign = "pos";
    std::string norm = "spectral";
    int modes = 5;
    int k_max = 8;
    std::size_t fd_nr = 128;
    std::size_t fd_ntheta = 64;
    double t_cut = 12.0;
    std::string out_dir;
    std::vector<std::string> formats;
    std::string exec = "openmp";
};

struct Setter {
    CLI::Option* opt;
    std::function<void(json&)> apply;
};

void add_common_options(CLI::App* sub, FlagValues& f, std::vector<Setter>& setters) {
    auto reg = [&setters](CLI::Option* opt, std::function<void(json&)> apply) {
        setters.push_back({opt, std::move(apply)});
    };

    reg(sub->add_option("--config", f.config_path, "JSON config file"), [](json&) {});
    reg(sub->add_option("--family", f.family,
                        "perturbation family: zero|const|ex1_pos|ex1_neg|ex2|ex3|table"),
        [&f](json& j) { j["family"] = f.family; });
    reg(sub->add_option("--gamma", f.gamma, "power-law exponent for ex1 families"),
        [&f](json& j) { j["gamma"] = f.gamma; });
    reg(sub->add_option("--beta", f.beta, "decay exponent for the ex2 family"),
        [&f](json& j) { j["beta"] = f.beta; });
    reg(sub->add_option("--A", f.A, "amplitude parameter for the ex3 family"),
        [&f](json& j) { j["A"] = f.A; });
    reg(sub->add_option("--c", f.c, "constant perturbation value"),
        [&f](json& j) { j["c"] = f.c; });
    reg(sub->add_option("--table", f.table_path, "two-column CSV (t, g) for the table family"),
        [&f](json& j) { j["table_path"] = f.table_path; });
    reg(sub->add_option("--n", f.n, "space dimension (2 or 3)"),
        [&f](json& j) { j["n"] = f.n; });
    reg(sub->add_option("--t-min", f.t_min, "window start in t = -log r"),
        [&f](json& j) { j["t_min"] = f.t_min; });
    reg(sub->add_option("--t-max", f.t_max, "window end in t = -log r"),
        [&f](json& j) { j["t_max"] = f.t_max; });
    reg(sub->add_option("--step", f.step, "integration step in t"),
        [&f](json& j) { j["step"] = f.step; });
    reg(sub->add_option("--tol", f.tol, "monotonicity slack for the oracle ratio check"),
        [&f](json& j) { j["tol"] = f.tol; });
    reg(sub->add_option("--seed", f.seed, "seed for random boundary data"),
        [&f](json& j) { j["seed"] = f.seed; });
    reg(sub->add_option("--which", f.which, "example selector: 1, 2 or 3"),
        [&f](json& j) { j["which"] = f.which; });
    reg(sub->add_option("--sign", f.sign, "example 1 variant: pos | neg"),
        [&f](json& j) { j["sign"] = f.sign; });
    reg(sub->add_option("--matrix-norm", f.norm, "oscillation norm: spectral | frobenius"),
        [&f](json& j) { j["norm"] = f.norm; });
    reg(sub->add_option("--modes", f.modes, "number of random boundary modes"),
        [&f](json& j) { j["modes"] = f.modes; });
    reg(sub->add_option("--k-max", f.k_max, "largest harmonic index for random data"),
        [&f](json& j) { j["k_max"] = f.k_max; });
    reg(sub->add_option("--fd-nr", f.fd_nr, "finite-difference radial intervals"),
        [&f](json& j) { j["fd_nr"] = f.fd_nr; });
    reg(sub->add_option("--fd-ntheta", f.fd_ntheta, "finite-difference angular points"),
        [&f](json& j) { j["fd_ntheta"] = f.fd_ntheta; });
    reg(sub->add_option("--t-cut", f.t_cut, "inner truncation for the fd solve"),
        [&f](json& j) { j["t_cut"] = f.t_cut; });
    reg(sub->add_option("--out", f.out_dir, "output directory"),
        [&f](json& j) { j["out_dir"] = f.out_dir; });
    reg(sub->add_option("--formats", f.formats, "emitted formats: json, csv")
            ->delimiter(','),
        [&f](json& j) { j["formats"] = f.formats; });
    reg(sub->add_option("--exec", f.exec, "execution mode: serial | openmp"),
        [&f](json& j) { j["exec"] = f.exec; });
}

bool wants(const gslab::RunConfig& cfg, const char* format) {
    return std::find(cfg.formats.begin(), cfg.formats.end(), format) != cfg.formats.end();
}

int run(gslab::RunConfig cfg) {
    namespace fs = std::filesystem;
    using namespace gslab;

    if (cfg.command == "example") {
        if (cfg.which == 1) {
            cfg.family = (cfg.sign == "neg") ? "ex1_neg" : "ex1_pos";
        } else if (cfg.which == 2) {
            cfg.family = "ex2";
        } else {
            cfg.family = "ex3";
        }
    }

    fs::create_directories(cfg.out_dir);
    const Exec ex = (cfg.exec == "serial") ? Exec::serial : Exec::openmp;
    const MatrixNorm mnorm =
        (cfg.norm == "frobenius") ? MatrixNorm::frobenius : MatrixNorm::spectral;
    auto out_path = [&cfg](const char* name) {
        return (fs::path(cfg.out_dir) / name).string();
    };

    const RadialProfile p = make_profile(cfg);
    Report report(cfg, p);

    if (cfg.command == "classify" || cfg.command == "example") {
        ClassifyOptions opt;
        opt.ode_step = std::min(cfg.step, 1e-3);
        opt.s_step = std::min(cfg.step, 1e-3);
        const RegularityVerdict rv = classify(p, cfg.n, opt);
        report.add_classification(rv);
        if (cfg.command == "example") {
            const DmoReport dmo = dmo_test(p, cfg.n);
            report.add("dmo", dmo.verdict, RuleTag::mean_oscillation);
            report.add_extra("dmo_partial_integral", dmo.partial_integral);
        }
    } else if (cfg.command == "solve-z") {
        SolveOptions so;
        so.step = std::min(cfg.step, 1e-3);
        const RadialSolution s = solve_Z(p, cfg.n, so);
        const ZLinearReport zl = z_linear_bound(s);
        report.add("z_linear_bound", zl.verdict, RuleTag::radial_barrier);
        const EnergyReport en = finite_energy(p, s);
        report.add("finite_energy", en.verdict, RuleTag::direct);
        report.add_extra("energy", en.value);
        report.add_extra("sup_z_over_r", zl.sup_ratio);
        report.add_extra("z_trend_slope", zl.slope);
        report.add_extra("ode_residual", ode_residual(p, s));
        if (wants(cfg, "csv")) {
            write_solution_csv(out_path("solution.csv"), s);
            report.add_artifact("solution.csv");
        }
    } else if (cfg.command == "oscillation") {
        const TGrid grid = default_curve_grid(p, cfg.n, 0.05);
        const OscillationCurve curve = oscillation_curve(p, cfg.n, grid, mnorm, ex);
        const DmoReport dmo = dmo_test(p, cfg.n, curve);
        report.add("dmo", dmo.verdict, RuleTag::mean_oscillation);
        report.add_extra("dmo_partial_integral", dmo.partial_integral);
        if (wants(cfg, "csv")) {
            write_curve_csv(out_path("curve.csv"), curve);
            report.add_artifact("curve.csv");
        }
    } else if (cfg.command == "stability") {
        const StabilityReport st = stability_report(p, cfg.n, std::min(cfg.step, 1e-3));
        report.add("uniform_stable", st.uniform_stable, RuleTag::direct);
        report.add("asympt_constant", st.asympt_constant, RuleTag::direct);
        report.add("limsup_divergent", st.limsup_divergent, RuleTag::direct);
        report.add("s_minus_inf", st.s_minus_inf, RuleTag::direct);
        report.add_extra("sup_s_increment", st.sup_increment);
        report.add_extra("s_end", st.S.values.back());
    } else if (cfg.command == "oracle") {
        const BoundaryData bd =
            BoundaryData::random_zero_mean(cfg.n, cfg.modes, cfg.k_max, cfg.seed);
        const ComparisonReport cmp = comparison_check(p, cfg.n, bd, cfg.tol, ex);
        const Verdict mono{cmp.monotone ? VerdictStatus::holds_numeric_window
                                        : VerdictStatus::fails_numeric_window,
                           cmp.max_violation};
        report.add("comparison_monotone", mono, RuleTag::direct);
        report.add_extra("comparison_max_ratio", cmp.max_ratio);
        if (wants(cfg, "csv")) {
            write_comparison_csv(out_path("comparison.csv"), cmp);
            report.add_artifact("comparison.csv");
        }

        const LipschitzProbe probe =
            lipschitz_probe(p, cfg.n, bd, p.t_min(), p.t_max() - 8.0, ex);
        report.add_extra("sup_quotient", probe.sup_quotient);
        report.add_extra("growth_fit", probe.growth_fit);

        if (cfg.n == 2) {
            const Fd2dResult fd =
                fd2d_solve(p, bd, cfg.fd_nr, cfg.fd_ntheta, cfg.t_cut, 1e-12, ex);
            const std::vector<double> ref = spectral_reference(p, bd, fd.t, fd.theta);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                const double d = fd.u[i] - ref[i];
                num += d * d;
                den += ref[i] * ref[i];
            }
            report.add_extra("fd_rel_l2", den > 0.0 ? std::sqrt(num / den) : 0.0);
            report.add_extra("fd_cg_iterations", json(fd.cg_iterations));
            report.add_extra("fd_rel_residual", fd.rel_residual);
            if (wants(cfg, "csv")) {
                write_field_csv(out_path("field.csv"), fd);
                report.add_artifact("field.csv");
            }
        }
    }

    if (wants(cfg, "json")) report.write(out_path("report.json"));
    std::cout << report.to_string();
    return report.suggested_exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for radial perturbations of the Laplacian"};
    app.require_subcommand(1);

    FlagValues flags;
    std::vector<Setter> setters;
    for (const char* name : {"classify", "solve-z", "oscillation", "stability", "oracle",
                             "example"}) {
        add_common_options(app.add_subcommand(name), flags, setters);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string out_dir_hint = ".";
    try {
        json merged;
        if (!flags.config_path.empty()) {
            std::ifstream in(flags.config_path);
            if (!in) throw gslab::ConfigInvalid("cannot read config '" + flags.config_path + "'");
            in >> merged;
            if (!merged.is_object()) throw gslab::ConfigInvalid("config must be a JSON object");
        }
        for (const Setter& s : setters) {
            if (s.opt->count() > 0) s.apply(merged);
        }
        merged["command"] = app.get_subcommands().front()->get_name();

        gslab::RunConfig cfg = gslab::RunConfig::from_json(merged);
        if (const char* env = std::getenv("GSLAB_OUT"); env != nullptr && *env != '\0') {
            cfg.out_dir = env;
        }
        cfg.validate();
        out_dir_hint = cfg.out_dir;
        return run(std::move(cfg));
    } catch (const gslab::Error& e) {
        try {
            std::filesystem::create_directories(out_dir_hint);
            nlohmann::ordered_json err;
            err["schema_version"] = 1;
            err["error"] = {{"type", error_name(e)}, {"message", e.what()}};
            std::ofstream out(std::filesystem::path(out_dir_hint) / "report.json",
                              std::ios::binary);
            out << err.dump(2) << "\n";
        } catch (...) {
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
