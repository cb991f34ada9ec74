#include "gslab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "gslab/grid.hpp"
#include "gslab/quadrature.hpp"

namespace gslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDomainSlack = 1e-9;

} // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::zero: return "zero";
        case Family::constant: return "const";
        case Family::ex1_pos: return "ex1_pos";
        case Family::ex1_neg: return "ex1_neg";
        case Family::ex2: return "ex2";
        case Family::ex3: return "ex3";
        case Family::table: return "table";
    }
    return "zero";
}

Ex3Constants ex3_constants(int n) {
    if (n != 2 && n != 3) throw UnsupportedDimension("ex3 constants defined for n in {2, 3}");
    const double m = static_cast<double>(n - 1);
    const double b0 = m * m / (m * m + 1.0);
    const double d0 = m / (m * m + 1.0);
    return {1.0 - b0, -(1.0 + d0)};
}

RadialProfile RadialProfile::zero(double t_min, double t_max) {
    RadialProfile p;
    p.family_ = Family::zero;
    p.t_min_ = t_min;
    p.t_max_ = t_max;
    p.validate(default_ellipticity);
    return p;
}

RadialProfile RadialProfile::constant(double c, double t_min, double t_max) {
    RadialProfile p;
    p.family_ = Family::constant;
    p.c_ = c;
    p.t_min_ = t_min;
    p.t_max_ = t_max;
    p.validate(default_ellipticity);
    return p;
}

RadialProfile RadialProfile::ex1_pos(double gamma, double t_min, double t_max) {
    if (!(gamma > 0.0)) throw ConfigInvalid("ex1 exponent gamma must be positive");
    RadialProfile p;
    p.family_ = Family::ex1_pos;
    p.gamma_ = gamma;
    p.t_min_ = t_min;
    p.t_max_ = t_max;
    p.validate(default_ellipticity);
    return p;
}

RadialProfile RadialProfile::ex1_neg(double gamma, double t_min, double t_max) {
    if (!(gamma > 0.0)) throw ConfigInvalid("ex1 exponent gamma must be positive");
    RadialProfile p;
    p.family_ = Family::ex1_neg;
    p.gamma_ = gamma;
    p.t_min_ = t_min;
    p.t_max_ = t_max;
    p.validate(default_ellipticity);
    return p;
}

RadialProfile RadialProfile::ex2(double beta, double t_min, double t_max) {
    if (!(beta > 0.0)) throw ConfigInvalid("ex2 exponent beta must be positive");
    RadialProfile p;
    p.family_ = Family::ex2;
    p.beta_ = beta;
    p.t_min_ = t_min;
    p.t_max_ = t_max;
    p.validate(default_ellipticity);
    return p;
}

RadialProfile RadialProfile::ex3(double A, int n, double t_min, double t_max) {
    if (n != 2 && n != 3) throw UnsupportedDimension("ex3 profile defined for n in {2, 3}");
    if (!(A > std::sqrt(2.0))) {
        throw EllipticityViolation("ex3 amplitude must exceed sqrt(2), got " + std::to_string(A));
    }
    RadialProfile p;
    p.family_ = Family::ex3;
    p.n_ = n;
    p.A_ = A;
    const auto cc = ex3_constants(n);
    p.C1_ = cc.C1;
    p.C2_ = cc.C2;
    p.t_min_ = t_min;
    p.t_max_ = t_max;
    p.validate(default_ellipticity);
    return p;
}

RadialProfile RadialProfile::table(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ConfigInvalid("table profile needs at least two samples");
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (!(samples[i + 1].first > samples[i].first)) {
            throw ConfigInvalid("table profile abscissae must be strictly increasing");
        }
    }
    for (const auto& [t, g] : samples) {
        if (!std::isfinite(t) || !std::isfinite(g)) {
            throw ConfigInvalid("table profile contains a non-finite sample");
        }
    }
    RadialProfile p;
    p.family_ = Family::table;
    p.t_min_ = samples.front().first;
    p.t_max_ = samples.back().first;
    p.samples_ = std::move(samples);
    p.validate(default_ellipticity);
    return p;
}

RadialProfile RadialProfile::table_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open table file: " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Strip comments and tolerate comma or whitespace separators.
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double t, g;
        if (!(row >> t)) continue; // blank or header line
        if (!(row >> g)) {
            throw ConfigInvalid("table file " + path + ": line " + std::to_string(lineno) +
                                " has no second column");
        }
        samples.emplace_back(t, g);
    }
    return table(std::move(samples));
}

double RadialProfile::g(double t) const {
    if (t < t_min_ - kDomainSlack || t > t_max_ + kDomainSlack) {
        throw OutOfDomain("g(t) requested at t = " + std::to_string(t) + ", window is [" +
                          std::to_string(t_min_) + ", " + std::to_string(t_max_) + "]");
    }
    t = std::clamp(t, t_min_, t_max_);
    switch (family_) {
        case Family::zero:
            return 0.0;
        case Family::constant:
            return c_;
        case Family::ex1_pos:
            return std::pow(t, -gamma_);
        case Family::ex1_neg:
            return -std::pow(t, -gamma_);
        case Family::ex2:
            return std::sin(t) * std::pow(t, -beta_);
        case Family::ex3:
            return (-C1_ * std::sin(t) - C2_ * std::cos(t)) /
                   (A_ + std::sin(t) - std::cos(t));
        case Family::table: {
            auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                       [](double x, const auto& s) { return x < s.first; });
            if (it == samples_.begin()) return samples_.front().second;
            if (it == samples_.end()) return samples_.back().second;
            const auto& [t1, g1] = *it;
            const auto& [t0, g0] = *(it - 1);
            const double w = (t - t0) / (t1 - t0);
            return g0 + w * (g1 - g0);
        }
    }
    return 0.0;
}

double RadialProfile::dg_dt(double t) const {
    if (t < t_min_ - kDomainSlack || t > t_max_ + kDomainSlack) {
        throw OutOfDomain("dg_dt(t) requested at t = " + std::to_string(t));
    }
    t = std::clamp(t, t_min_, t_max_);
    switch (family_) {
        case Family::zero:
        case Family::constant:
            return 0.0;
        case Family::ex1_pos:
            return -gamma_ * std::pow(t, -gamma_ - 1.0);
        case Family::ex1_neg:
            return gamma_ * std::pow(t, -gamma_ - 1.0);
        case Family::ex2:
            return std::cos(t) * std::pow(t, -beta_) -
                   beta_ * std::sin(t) * std::pow(t, -beta_ - 1.0);
        case Family::ex3: {
            const double s = std::sin(t), c = std::cos(t);
            const double num = -C1_ * s - C2_ * c;
            const double dnum = -C1_ * c + C2_ * s;
            const double den = A_ + s - c;
            const double dden = c + s;
            return (dnum * den - num * dden) / (den * den);
        }
        case Family::table: {
            // Slope of the segment containing t (right-continuous at nodes,
            // last segment's slope at the right endpoint).
            auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                       [](double x, const auto& s) { return x < s.first; });
            if (it == samples_.begin()) ++it;
            if (it == samples_.end()) --it;
            const auto& [t1, g1] = *it;
            const auto& [t0, g0] = *(it - 1);
            return (g1 - g0) / (t1 - t0);
        }
    }
    return 0.0;
}

double RadialProfile::g_of_r(double r) const {
    if (!(r > 0.0)) throw OutOfDomain("g_of_r needs r > 0");
    return g(-std::log(r));
}

void RadialProfile::validate(double eps_ell) {
    if (!(t_max_ > t_min_)) throw ConfigInvalid("profile window: t_max must exceed t_min");
    if (!(t_min_ > 0.0)) throw ConfigInvalid("profile window: t_min must be positive");

    // Margin scan: dense enough that the sampled minimum of the smooth
    // families is within O(h^2) of the true one, far below eps_ell scale.
    const std::size_t nsamples = 20001;
    const double h = (t_max_ - t_min_) / static_cast<double>(nsamples - 1);
    double margin = kInf, sup_g = 0.0, sup_dg = 0.0;
    for (std::size_t i = 0; i < nsamples; ++i) {
        const double t = (i + 1 == nsamples) ? t_max_ : t_min_ + static_cast<double>(i) * h;
        const double gi = g(t);
        margin = std::min(margin, 1.0 + gi);
        sup_g = std::max(sup_g, std::abs(gi));
        sup_dg = std::max(sup_dg, std::abs(dg_dt(t)));
    }
    margin_ = margin;
    sup_abs_g_ = sup_g;
    sup_abs_dg_ = sup_dg;
    if (!(margin_ >= eps_ell)) {
        throw EllipticityViolation("1 + g falls to " + std::to_string(margin_) +
                                   " on the window, below the required " +
                                   std::to_string(eps_ell));
    }
}

Verdict RadialProfile::positive_near_zero() const {
    switch (family_) {
        case Family::zero:
            return {VerdictStatus::fails_analytic, 0.0};
        case Family::constant:
            return {c_ > 0.0 ? VerdictStatus::holds_analytic : VerdictStatus::fails_analytic, c_};
        case Family::ex1_pos:
            return {VerdictStatus::holds_analytic, std::pow(t_max_, -gamma_)};
        case Family::ex1_neg:
            return {VerdictStatus::fails_analytic, -std::pow(t_max_, -gamma_)};
        case Family::ex2:
        case Family::ex3:
            // Sign changes on every period, so no neighborhood of r = 0 works.
            return {VerdictStatus::fails_analytic, 0.0};
        case Family::table: {
            const double lo = std::max(t_min_, t_max_ - 10.0);
            double min_g = kInf;
            const std::size_t nsamples = 2001;
            for (std::size_t i = 0; i < nsamples; ++i) {
                const double t = lo + (t_max_ - lo) * static_cast<double>(i) /
                                          static_cast<double>(nsamples - 1);
                min_g = std::min(min_g, g(t));
            }
            return {min_g > 0.0 ? VerdictStatus::holds_numeric_window
                                : VerdictStatus::fails_numeric_window,
                    min_g};
        }
    }
    return {VerdictStatus::inconclusive, 0.0};
}

namespace {

// Window integral of a transform of g by adaptive quadrature.
double window_integral(const RadialProfile& p, double T,
                       const std::function<double(double)>& integrand) {
    const double hi = std::min(T, p.t_max());
    if (!(hi > p.t_min())) return 0.0;
    return integrate_adaptive(integrand, p.t_min(), hi, 1e-10, 1e-13);
}

// Windowed convergence heuristic for table profiles: prefix integrals of a
// nonnegative integrand on a dense uniform grid. HOLDS when the last decade
// contributes under the Cauchy cutoff, FAILS when the prefix has blown up and
// is still accelerating, INCONCLUSIVE otherwise.
Verdict table_convergence(const RadialProfile& p,
                          const std::function<double(double)>& integrand, double T) {
    const double hi = std::min(T, p.t_max());
    const TGrid grid = TGrid::uniform(p.t_min(), hi, 0.01);
    std::vector<double> f(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) f[i] = integrand(grid.at(i));
    const auto prefix = cumulative_simpson(f, grid.step());
    const double total = prefix.back();

    auto prefix_at = [&](double t) {
        return prefix[grid.index_below(t)];
    };
    const double span = hi - p.t_min();
    const double dec = std::min(10.0, 0.5 * span);
    const double last = total - prefix_at(hi - dec);
    const double before = prefix_at(hi - dec) - prefix_at(std::max(p.t_min(), hi - 2.0 * dec));

    if (last < 1e-6) return {VerdictStatus::holds_numeric_window, total};
    if (total > 1e3 && last >= before) return {VerdictStatus::fails_numeric_window, total};
    return {VerdictStatus::inconclusive, total};
}

Verdict analytic(bool holds, double evidence) {
    return {holds ? VerdictStatus::holds_analytic : VerdictStatus::fails_analytic, evidence};
}

// ∫_{t_min}^{T} t^{-q} dt, T possibly infinite (only for q > 1).
double power_tail(double t_min, double T, double q) {
    if (std::isinf(T)) return std::pow(t_min, 1.0 - q) / (q - 1.0);
    if (q == 1.0) return std::log(T / t_min);
    return (std::pow(T, 1.0 - q) - std::pow(t_min, 1.0 - q)) / (1.0 - q);
}

} // namespace

Verdict dini_test(const RadialProfile& p, double T_test) {
    const double T_window = std::min(T_test, p.t_max());
    switch (p.family()) {
        case Family::zero:
            return analytic(true, 0.0);
        case Family::constant:
            if (p.constant_c() == 0.0) return analytic(true, 0.0);
            return analytic(false, std::abs(p.constant_c()) * (T_window - p.t_min()));
        case Family::ex1_pos:
        case Family::ex1_neg: {
            const double q = p.gamma();
            const bool conv = q > 1.0;
            const double T_ev = conv ? T_test : T_window;
            return analytic(conv, power_tail(p.t_min(), T_ev, q));
        }
        case Family::ex2: {
            const double ev = window_integral(
                p, T_test, [&](double t) { return std::abs(p.g(t)); });
            return analytic(p.beta() > 1.0, ev);
        }
        case Family::ex3: {
            const double ev = window_integral(
                p, T_test, [&](double t) { return std::abs(p.g(t)); });
            return analytic(false, ev);
        }
        case Family::table:
            return table_convergence(p, [&](double t) { return std::abs(p.g(t)); }, T_test);
    }
    return {VerdictStatus::inconclusive, 0.0};
}

Verdict square_dini_test(const RadialProfile& p, double T_test) {
    const double T_window = std::min(T_test, p.t_max());
    switch (p.family()) {
        case Family::zero:
            return analytic(true, 0.0);
        case Family::constant:
            if (p.constant_c() == 0.0) return analytic(true, 0.0);
            return analytic(false, p.constant_c() * p.constant_c() * (T_window - p.t_min()));
        case Family::ex1_pos:
        case Family::ex1_neg: {
            const double q = 2.0 * p.gamma();
            const bool conv = q > 1.0;
            const double T_ev = conv ? T_test : T_window;
            return analytic(conv, power_tail(p.t_min(), T_ev, q));
        }
        case Family::ex2: {
            const double ev = window_integral(
                p, T_test, [&](double t) { const double x = p.g(t); return x * x; });
            return analytic(2.0 * p.beta() > 1.0, ev);
        }
        case Family::ex3: {
            const double ev = window_integral(
                p, T_test, [&](double t) { const double x = p.g(t); return x * x; });
            return analytic(false, ev);
        }
        case Family::table:
            return table_convergence(
                p, [&](double t) { const double x = p.g(t); return x * x; }, T_test);
    }
    return {VerdictStatus::inconclusive, 0.0};
}

Verdict total_variation_test(const RadialProfile& p, double T_test) {
    switch (p.family()) {
        case Family::zero:
        case Family::constant:
            return analytic(true, 0.0);
        case Family::ex1_pos:
        case Family::ex1_neg: {
            // |dg/dt| = gamma t^{-gamma-1}, integrable down to r = 0 for
            // every positive gamma; antiderivative is -t^{-gamma}.
            const double hi =
                std::isinf(T_test) ? 0.0 : std::pow(std::min(T_test, p.t_max()), -p.gamma());
            return analytic(true, std::pow(p.t_min(), -p.gamma()) - hi);
        }
        case Family::ex2: {
            const double ev = window_integral(
                p, T_test, [&](double t) { return std::abs(p.dg_dt(t)); });
            return analytic(p.beta() > 1.0, ev);
        }
        case Family::ex3: {
            const double ev = window_integral(
                p, T_test, [&](double t) { return std::abs(p.dg_dt(t)); });
            return analytic(false, ev);
        }
        case Family::table: {
            // Exact for the interpolant: sum of |increments| up to the cutoff.
            const double hi = std::min(T_test, p.t_max());
            double tv = 0.0, tv_last_dec = 0.0, tv_before = 0.0;
            const auto& s = p.samples();
            const double span = hi - p.t_min();
            const double dec = std::min(10.0, 0.5 * span);
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                if (s[i].first >= hi) break;
                const double t1 = std::min(s[i + 1].first, hi);
                const double full = std::abs(s[i + 1].second - s[i].second);
                const double part = full * (t1 - s[i].first) / (s[i + 1].first - s[i].first);
                tv += part;
                if (s[i].first >= hi - dec) tv_last_dec += part;
                else if (s[i].first >= hi - 2.0 * dec) tv_before += part;
            }
            if (tv_last_dec < 1e-6) return {VerdictStatus::holds_numeric_window, tv};
            if (tv > 1e3 && tv_last_dec >= tv_before) return {VerdictStatus::fails_numeric_window, tv};
            return {VerdictStatus::inconclusive, tv};
        }
    }
    return {VerdictStatus::inconclusive, 0.0};
}

Verdict rgprime_bounded_test(const RadialProfile& p) {
    // dg/dt = -r g'(r); the closed-form families all have bounded slope in t.
    if (p.family() == Family::table) {
        return {VerdictStatus::holds_numeric_window, p.sup_abs_dg_dt()};
    }
    return {VerdictStatus::holds_analytic, p.sup_abs_dg_dt()};
}

ModulusReport modulus_report(const RadialProfile& p, double T_test) {
    return ModulusReport{
        dini_test(p, T_test),
        square_dini_test(p, T_test),
        total_variation_test(p, T_test),
        rgprime_bounded_test(p),
    };
}

} // namespace gslab
