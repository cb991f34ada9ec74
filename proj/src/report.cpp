#include "gslab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>

namespace gslab {

namespace {

bool one_of(const std::string& s, std::initializer_list<const char*> opts) {
    return std::any_of(opts.begin(), opts.end(),
                       [&](const char* o) { return s == o; });
}

} // namespace

void RunConfig::validate() const {
    if (!one_of(command, {"classify", "solve-z", "oscillation", "stability", "oracle",
                          "example"})) {
        throw ConfigInvalid("unknown command '" + command + "'");
    }
    if (!one_of(family, {"zero", "const", "ex1_pos", "ex1_neg", "ex2", "ex3", "table"})) {
        throw ConfigInvalid("unknown family '" + family + "'");
    }
    if (family == "table" && table_path.empty()) {
        throw ConfigInvalid("family 'table' needs a sample file (--table)");
    }
    if (n != 2 && n != 3) throw ConfigInvalid("n must be 2 or 3");
    if (!(t_max >= 10.0 && t_max <= 60.0)) throw ConfigInvalid("t_max must lie in [10, 60]");
    if (!(step > 0.0 && step <= 1e-2)) throw ConfigInvalid("step must lie in (0, 1e-2]");
    if (t_min && !(*t_min > 0.0 && *t_min + 5.0 <= t_max)) {
        throw ConfigInvalid("t_min must be positive and leave a window of at least 5");
    }
    if (!(gamma > 0.0 && gamma <= 10.0)) throw ConfigInvalid("gamma must lie in (0, 10]");
    if (!(beta > 0.0 && beta <= 10.0)) throw ConfigInvalid("beta must lie in (0, 10]");
    if (family == "ex3" && !(A >= 2.0)) throw ConfigInvalid("ex3 needs amplitude A >= 2");
    if (family == "const" && !(c > -1.0 + RadialProfile::default_ellipticity)) {
        throw ConfigInvalid("constant perturbation must keep 1 + c elliptic");
    }
    if (which < 1 || which > 3) throw ConfigInvalid("which must be 1, 2 or 3");
    if (!one_of(sign, {"pos", "neg"})) throw ConfigInvalid("sign must be pos or neg");
    if (!one_of(norm, {"spectral", "frobenius"})) {
        throw ConfigInvalid("norm must be spectral or frobenius");
    }
    if (!(tol > 0.0 && tol < 1.0)) throw ConfigInvalid("tol must lie in (0, 1)");
    if (modes < 1) throw ConfigInvalid("modes must be positive");
    if (k_max < modes) throw ConfigInvalid("k_max must be at least modes");
    if (fd_nr < 4 || fd_nr > 4096) throw ConfigInvalid("fd_nr must lie in [4, 4096]");
    if (fd_ntheta < 8 || fd_ntheta > 4096) throw ConfigInvalid("fd_ntheta must lie in [8, 4096]");
    if (!(t_cut > 0.0 && t_cut <= t_max)) throw ConfigInvalid("t_cut must lie in (0, t_max]");
    if (formats.empty()) throw ConfigInvalid("formats must not be empty");
    for (const auto& f : formats) {
        if (!one_of(f, {"json", "csv"})) {
            throw ConfigInvalid("formats entries must be json or csv");
        }
    }
    if (!one_of(exec, {"serial", "openmp"})) throw ConfigInvalid("exec must be serial or openmp");
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    // The profile can be given as a nested object, a bare family name, or
    // flat keys; flat keys win so command-line flags can override a file.
    auto read_profile_fields = [&cfg](const nlohmann::json& p) {
        cfg.family = p.value("family", cfg.family);
        cfg.gamma = p.value("gamma", cfg.gamma);
        cfg.beta = p.value("beta", cfg.beta);
        cfg.A = p.value("A", cfg.A);
        cfg.c = p.value("c", cfg.c);
        cfg.table_path = p.value("table_path", p.value("path", cfg.table_path));
        cfg.n = p.value("n", cfg.n);
        if (p.contains("t_min")) cfg.t_min = p.at("t_min").get<double>();
        cfg.t_max = p.value("t_max", cfg.t_max);
    };

    cfg.command = j.value("command", cfg.command);
    if (j.contains("profile")) {
        const auto& p = j.at("profile");
        if (p.is_string()) {
            cfg.family = p.get<std::string>();
        } else if (p.is_object()) {
            read_profile_fields(p);
        } else {
            throw ConfigInvalid("profile must be a family name or an object");
        }
    }
    read_profile_fields(j);

    cfg.step = j.value("step", cfg.step);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.which = j.value("which", cfg.which);
    cfg.sign = j.value("sign", cfg.sign);
    cfg.norm = j.value("norm", cfg.norm);
    cfg.modes = j.value("modes", cfg.modes);
    cfg.k_max = j.value("k_max", cfg.k_max);
    cfg.fd_nr = j.value("fd_nr", cfg.fd_nr);
    cfg.fd_ntheta = j.value("fd_ntheta", cfg.fd_ntheta);
    cfg.t_cut = j.value("t_cut", cfg.t_cut);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    if (j.contains("formats")) {
        cfg.formats = j.at("formats").get<std::vector<std::string>>();
    }
    cfg.exec = j.value("exec", cfg.exec);
    return cfg;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["family"] = family;
    if (family == "ex1_pos" || family == "ex1_neg") j["gamma"] = gamma;
    if (family == "ex2") j["beta"] = beta;
    if (family == "ex3") j["A"] = A;
    if (family == "const") j["c"] = c;
    if (family == "table") j["table_path"] = table_path;
    j["n"] = n;
    if (t_min) j["t_min"] = *t_min;
    j["t_max"] = t_max;
    j["step"] = step;
    j["tol"] = tol;
    j["seed"] = seed;
    j["which"] = which;
    j["sign"] = sign;
    j["norm"] = norm;
    j["modes"] = modes;
    j["k_max"] = k_max;
    j["fd_nr"] = fd_nr;
    j["fd_ntheta"] = fd_ntheta;
    j["t_cut"] = t_cut;
    j["out_dir"] = out_dir;
    j["formats"] = formats;
    j["exec"] = exec;
    return j;
}

RadialProfile make_profile(const RunConfig& cfg) {
    std::string family = cfg.family;
    if (cfg.command == "example") {
        if (cfg.which == 1) {
            family = (cfg.sign == "neg") ? "ex1_neg" : "ex1_pos";
        } else if (cfg.which == 2) {
            family = "ex2";
        } else {
            family = "ex3";
        }
    }

    const double t_max = cfg.t_max;
    auto lo = [&](double fallback) { return cfg.t_min.value_or(fallback); };

    if (family == "zero") return RadialProfile::zero(lo(RadialProfile::kLog2), t_max);
    if (family == "const") return RadialProfile::constant(cfg.c, lo(RadialProfile::kLog2), t_max);
    if (family == "ex1_pos") {
        return RadialProfile::ex1_pos(cfg.gamma, lo(RadialProfile::kLog2), t_max);
    }
    if (family == "ex1_neg") return RadialProfile::ex1_neg(cfg.gamma, lo(2.0), t_max);
    if (family == "ex2") return RadialProfile::ex2(cfg.beta, lo(RadialProfile::kLog2), t_max);
    if (family == "ex3") {
        return RadialProfile::ex3(cfg.A, cfg.n, lo(RadialProfile::kLog2), t_max);
    }
    if (family == "table") return RadialProfile::table_from_csv(cfg.table_path);
    throw ConfigInvalid("unknown family '" + family + "'");
}

double round12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

Report::Report(const RunConfig& cfg, const RadialProfile& p) {
    root_["schema_version"] = 1;
    root_["command"] = cfg.command;
    root_["config"] = cfg.to_json();

    nlohmann::ordered_json prof;
    prof["family"] = std::string(gslab::to_string(p.family()));
    switch (p.family()) {
        case Family::ex1_pos:
        case Family::ex1_neg:
            prof["gamma"] = round12(p.gamma());
            break;
        case Family::ex2:
            prof["beta"] = round12(p.beta());
            break;
        case Family::ex3:
            prof["A"] = round12(p.amplitude_A());
            prof["dim"] = p.dim();
            break;
        case Family::constant:
            prof["c"] = round12(p.constant_c());
            break;
        case Family::table:
            prof["sample_count"] = p.samples().size();
            break;
        case Family::zero:
            break;
    }
    prof["t_min"] = round12(p.t_min());
    prof["t_max"] = round12(p.t_max());
    prof["ellipticity_margin"] = round12(p.ellipticity_margin());
    prof["sup_abs_g"] = round12(p.sup_abs_g());
    prof["sup_abs_dg_dt"] = round12(p.sup_abs_dg_dt());
    root_["profile"] = prof;

    root_["verdicts"] = nlohmann::ordered_json::array();
    root_["extras"] = nlohmann::ordered_json::object();
    root_["artifacts"] = nlohmann::ordered_json::array();
}

void Report::add(const std::string& criterion, const Verdict& v, RuleTag rule) {
    entries_.push_back({criterion, v, rule});
    nlohmann::ordered_json row;
    row["criterion"] = criterion;
    row["status"] = std::string(gslab::to_string(v.status));
    row["evidence"] = round12(v.evidence);
    row["rule"] = std::string(gslab::to_string(rule));
    root_["verdicts"].push_back(row);
}

void Report::add_classification(const RegularityVerdict& rv) {
    add("lipschitz_at_0", rv.lipschitz_at_0.verdict, rv.lipschitz_at_0.rule);
    add("differentiable_at_0", rv.differentiable_at_0.verdict, rv.differentiable_at_0.rule);
    add("c1_neighborhood", rv.c1_neighborhood.verdict, rv.c1_neighborhood.rule);
    add("non_lipschitz_exists", rv.non_lipschitz_exists.verdict, rv.non_lipschitz_exists.rule);
    add("grad_zero_at_0", rv.grad_zero_at_0.verdict, rv.grad_zero_at_0.rule);

    add("dini", rv.modulus.dini, RuleTag::direct);
    add("square_dini", rv.modulus.square_dini, RuleTag::direct);
    add("total_variation", rv.modulus.total_variation, RuleTag::direct);
    add("rgprime_bounded", rv.modulus.rgprime_bounded, RuleTag::direct);

    add("uniform_stable", rv.stability.uniform_stable, RuleTag::direct);
    add("asympt_constant", rv.stability.asympt_constant, RuleTag::direct);
    add("limsup_divergent", rv.stability.limsup_divergent, RuleTag::direct);
    add("s_minus_inf", rv.stability.s_minus_inf, RuleTag::direct);
    add_extra("sup_s_increment", rv.stability.sup_increment);

    if (rv.z_linear) add("z_linear_bound", *rv.z_linear, RuleTag::radial_barrier);
}

void Report::add_extra(const std::string& key, double value) {
    root_["extras"][key] = round12(value);
}

void Report::add_extra(const std::string& key, const nlohmann::json& value) {
    root_["extras"][key] = value;
}

void Report::add_artifact(const std::string& filename) {
    root_["artifacts"].push_back(filename);
}

int Report::suggested_exit_code() const {
    if (entries_.empty()) return 0;
    const bool all_inconclusive =
        std::all_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) {
            return e.verdict.status == VerdictStatus::inconclusive;
        });
    return all_inconclusive ? 2 : 0;
}

std::string Report::to_string() const { return root_.dump(2) + "\n"; }

void Report::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigInvalid("cannot open '" + path + "' for writing");
    out << to_string();
}

namespace {

class CsvWriter {
public:
    CsvWriter(const std::string& path, const char* header) : out_(path, std::ios::binary) {
        if (!out_) throw ConfigInvalid("cannot open '" + path + "' for writing");
        out_ << header << '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) out_ << ',';
            first = false;
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out_ << buf;
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace

void write_solution_csv(const std::string& path, const RadialSolution& s) {
    CsvWriter csv(path, "t,r,v,w,v_over_r");
    for (std::size_t i = 0; i < s.grid.count; ++i) {
        csv.row({s.grid.at(i), s.r_at(i), s.v[i], s.w[i], s.v_over_rk(i)});
    }
}

void write_curve_csv(const std::string& path, const OscillationCurve& c) {
    CsvWriter csv(path, "t,r,gtilde,g_minus_gtilde,omega_A");
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        csv.row({c.t[i], c.r[i], c.gtilde[i], c.g_minus_gtilde[i], c.omega[i]});
    }
}

void write_field_csv(const std::string& path, const Fd2dResult& f) {
    CsvWriter csv(path, "t,theta,u");
    for (std::size_t i = 0; i < f.t.size(); ++i) {
        for (std::size_t j = 0; j < f.theta.size(); ++j) {
            csv.row({f.t[i], f.theta[j], f.at(i, j)});
        }
    }
}

void write_comparison_csv(const std::string& path, const ComparisonReport& c) {
    CsvWriter csv(path, "t,ratio");
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        csv.row({c.t[i], c.ratio[i]});
    }
}

} // namespace gslab
