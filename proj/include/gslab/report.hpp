#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gslab/dynsys.hpp"
#include "gslab/oracle.hpp"
#include "gslab/oscillation.hpp"
#include "gslab/profile.hpp"
#include "gslab/radial_ode.hpp"

namespace gslab {

// Run configuration shared by all CLI commands. Parsed from flags or a JSON
// config file; validated before any computation starts.
struct RunConfig {
    std::string command; // classify | solve-z | oscillation | stability | oracle | example

    std::string family = "zero"; // zero|const|ex1_pos|ex1_neg|ex2|ex3|table
    double gamma = 1.0;
    double beta = 1.0;
    double A = 10.0;
    double c = 0.0;
    std::string table_path;

    int n = 2;
    std::optional<double> t_min; // family default when unset
    double t_max = 40.0;
    double step = 1e-3;
    std::uint64_t seed = 42;

    int which = 1;            // example selector: 1, 2 or 3
    std::string sign = "pos"; // example 1 variant: pos | neg

    std::string norm = "spectral"; // spectral | frobenius
    double tol = 1e-6;             // monotonicity slack for the oracle ratio check
    int modes = 5;                 // oracle: number of random boundary modes
    int k_max = 8;                 // oracle: largest harmonic index
    std::size_t fd_nr = 128;       // oracle: fd grid, radial intervals
    std::size_t fd_ntheta = 64;    // oracle: fd grid, angular points
    double t_cut = 12.0;           // oracle: inner truncation for the fd solve

    std::string out_dir = ".";
    std::vector<std::string> formats = {"json", "csv"};
    std::string exec = "openmp"; // serial | openmp

    void validate() const; // throws ConfigInvalid
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

RadialProfile make_profile(const RunConfig& cfg);

// One verdict row of the report. `rule` names the result that justifies the
// verdict, from the fixed enumeration in RuleTag.
struct ReportEntry {
    std::string criterion;
    Verdict verdict;
    RuleTag rule = RuleTag::direct;
};

// report.json assembly. Doubles are rounded to 12 significant digits on
// insertion so that re-running a deterministic pipeline reproduces the file
// byte for byte.
class Report {
public:
    Report(const RunConfig& cfg, const RadialProfile& p);

    void add(const std::string& criterion, const Verdict& v, RuleTag rule);
    void add_classification(const RegularityVerdict& rv);
    void add_extra(const std::string& key, double value);
    void add_extra(const std::string& key, const nlohmann::json& value);
    void add_artifact(const std::string& filename);

    // 0 = at least one decided verdict, 2 = all verdicts INCONCLUSIVE.
    int suggested_exit_code() const;

    std::string to_string() const; // serialized with stable field order
    void write(const std::string& path) const;

private:
    nlohmann::ordered_json root_;
    std::vector<ReportEntry> entries_;
};

// Round to 12 significant digits (the value that "%.12g" prints).
double round12(double x);

// CSV writers. Headers are fixed; values are written with "%.17g" so the
// files round-trip exactly.
void write_solution_csv(const std::string& path, const RadialSolution& s);
void write_curve_csv(const std::string& path, const OscillationCurve& c);
void write_field_csv(const std::string& path, const Fd2dResult& f);
void write_comparison_csv(const std::string& path, const ComparisonReport& c);

} // namespace gslab
