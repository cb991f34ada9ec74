#include "gslab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "gslab/dynsys.hpp"
#include "gslab/quadrature.hpp"

namespace gslab {

double legendre_pk(int k, double x) {
    if (k < 0) throw ConfigInvalid("legendre_pk: negative degree");
    if (k == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int m = 2; m <= k; ++m) {
        const double next = ((2.0 * m - 1.0) * x * p - (m - 1.0) * pm1) / m;
        pm1 = p;
        p = next;
    }
    return p;
}

double BoundaryData::eval(int n, double angle_or_mu) const {
    double acc = 0.0;
    for (const auto& m : modes) {
        if (n == 2) {
            acc += m.a_cos * std::cos(m.k * angle_or_mu) + m.a_sin * std::sin(m.k * angle_or_mu);
        } else {
            acc += m.a_cos * legendre_pk(m.k, angle_or_mu);
        }
    }
    return acc;
}

double BoundaryData::norm2(int n) const {
    // Sphere-mean Parseval weights: cos/sin modes average to 1/2 on the
    // circle; zonal harmonics to 1/(2k+1) on the 2-sphere; constants to 1.
    double acc = 0.0;
    for (const auto& m : modes) {
        if (m.k == 0) {
            acc += m.a_cos * m.a_cos;
        } else if (n == 2) {
            acc += 0.5 * (m.a_cos * m.a_cos + m.a_sin * m.a_sin);
        } else {
            acc += m.a_cos * m.a_cos / (2.0 * m.k + 1.0);
        }
    }
    return acc;
}

BoundaryData BoundaryData::random_zero_mean(int n, int mode_count, int k_max,
                                            std::uint64_t seed) {
    if (n != 2 && n != 3) throw UnsupportedDimension("boundary data: n must be 2 or 3");
    if (mode_count < 1 || k_max < mode_count) {
        throw ConfigInvalid("boundary data: need 1 <= mode_count <= k_max");
    }
    std::mt19937_64 rng(seed);
    std::vector<int> ks(static_cast<std::size_t>(k_max));
    std::iota(ks.begin(), ks.end(), 1);
    std::shuffle(ks.begin(), ks.end(), rng);
    ks.resize(static_cast<std::size_t>(mode_count));
    std::sort(ks.begin(), ks.end());

    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    BoundaryData bd;
    for (int k : ks) {
        Mode m;
        m.k = k;
        m.a_cos = amp(rng);
        m.a_sin = (n == 2) ? amp(rng) : 0.0;
        bd.modes.push_back(m);
    }
    return bd;
}

namespace {

// Parseval weight of one mode for the sphere-mean L2 norm.
double mode_weight(int n, const BoundaryData::Mode& m) {
    if (n == 2) return 0.5 * (m.a_cos * m.a_cos + m.a_sin * m.a_sin);
    return m.a_cos * m.a_cos / (2.0 * m.k + 1.0);
}

} // namespace

ComparisonReport comparison_check(const RadialProfile& p, int n, const BoundaryData& bd,
                                  double tol, Exec ex) {
    if (n != 2 && n != 3) throw UnsupportedDimension("comparison_check: n must be 2 or 3");
    if (bd.modes.empty()) throw ConfigInvalid("comparison_check: boundary data has no modes");
    for (const auto& m : bd.modes) {
        if (m.k < 1) {
            throw HypothesisUnmet("comparison_check: boundary data must have zero mean "
                                  "(no k = 0 component)");
        }
    }

    const RadialSolution z = solve_Z(p, n);
    const std::size_t nmodes = bd.modes.size();
    std::vector<RadialSolution> sols(nmodes);

    const auto mcount = static_cast<std::ptrdiff_t>(nmodes);
    if (ex == Exec::openmp) {
        std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < mcount; ++i) {
            try {
                sols[static_cast<std::size_t>(i)] =
                    solve_mode(p, n, bd.modes[static_cast<std::size_t>(i)].k, SolveOptions{});
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (std::ptrdiff_t i = 0; i < mcount; ++i) {
            sols[static_cast<std::size_t>(i)] =
                solve_mode(p, n, bd.modes[static_cast<std::size_t>(i)].k, SolveOptions{});
        }
    }

    // Sample the ratio away from the outer seed: the backward solves carry a
    // growing-mode contamination of size O(g(t_max)) at the seed itself, so
    // the comparison window stops 8 units short of it.
    ComparisonReport rep;
    const double hi = p.t_max() - 8.0;
    if (!(hi > p.t_min())) throw ConfigInvalid("comparison_check: window too short");
    const TGrid samples = TGrid::uniform(p.t_min(), hi, 0.1);

    rep.t.resize(samples.count);
    rep.ratio.resize(samples.count);
    for (std::size_t i = 0; i < samples.count; ++i) {
        const double t = samples.at(i);
        double norm2 = 0.0;
        for (std::size_t m = 0; m < nmodes; ++m) {
            // Radial factor normalized to 1 at the outer boundary.
            const double rk = sols[m].v_at(t) * std::exp(bd.modes[m].k * p.t_min());
            norm2 += mode_weight(n, bd.modes[m]) * rk * rk;
        }
        rep.t[i] = t;
        rep.ratio[i] = std::sqrt(norm2) / z.v_at(t);
    }

    rep.max_ratio = *std::max_element(rep.ratio.begin(), rep.ratio.end());
    // Inward means t increasing; the lemma says the ratio cannot increase.
    double viol = 0.0;
    for (std::size_t i = 0; i + 1 < rep.ratio.size(); ++i) {
        viol = std::max(viol, rep.ratio[i + 1] - rep.ratio[i]);
    }
    rep.max_violation = viol;
    rep.monotone = viol <= tol * std::max(rep.max_ratio, 1e-300);
    return rep;
}

namespace {

struct Fd2dOperator {
    std::size_t nr, ntheta;
    std::vector<double> cm, cp; // radial couplings per interior row
    double cth;                 // angular coupling

    std::size_t size() const { return (nr - 1) * ntheta; }

    void apply(const std::vector<double>& x, std::vector<double>& y, Exec ex) const {
        const auto rows = static_cast<std::ptrdiff_t>(nr - 1);
#pragma omp parallel for schedule(static) if (ex == Exec::openmp)
        for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            const double diag = cm[i] + cp[i] + 2.0 * cth;
            for (std::size_t j = 0; j < ntheta; ++j) {
                const std::size_t idx = i * ntheta + j;
                const std::size_t jl = (j == 0) ? ntheta - 1 : j - 1;
                const std::size_t jr = (j + 1 == ntheta) ? 0 : j + 1;
                double acc = diag * x[idx] - cth * (x[i * ntheta + jl] + x[i * ntheta + jr]);
                if (i > 0) acc -= cm[i] * x[(i - 1) * ntheta + j];
                if (i + 1 < nr - 1) acc -= cp[i] * x[(i + 1) * ntheta + j];
                y[idx] = acc;
            }
        }
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b, Exec ex) {
    double acc = 0.0;
    const auto sz = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : acc) if (ex == Exec::openmp)
    for (std::ptrdiff_t i = 0; i < sz; ++i) {
        acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    }
    return acc;
}

} // namespace

Fd2dResult fd2d_solve(const RadialProfile& p, const BoundaryData& bd, std::size_t nr,
                      std::size_t ntheta, double t_cut, double cg_tol, Exec ex) {
    // The polar finite-difference grid only makes sense on the plane; zonal
    // 3-d problems would need a different stencil.
    if (bd.modes.empty()) throw ConfigInvalid("fd2d_solve: boundary data has no modes");
    if (nr < 4 || ntheta < 8) throw ConfigInvalid("fd2d_solve: grid too coarse");
    if (!(t_cut > p.t_min()) || t_cut > p.t_max()) {
        throw ConfigInvalid("fd2d_solve: t_cut must lie inside the profile window");
    }

    const double ht = (t_cut - p.t_min()) / static_cast<double>(nr);
    const double htheta = 2.0 * std::numbers::pi / static_cast<double>(ntheta);

    Fd2dOperator op;
    op.nr = nr;
    op.ntheta = ntheta;
    op.cth = 1.0 / (htheta * htheta);
    op.cm.resize(nr - 1);
    op.cp.resize(nr - 1);
    for (std::size_t i = 0; i < nr - 1; ++i) {
        const double t_lo = p.t_min() + (static_cast<double>(i) + 0.5) * ht;
        const double t_hi = p.t_min() + (static_cast<double>(i) + 1.5) * ht;
        op.cm[i] = (1.0 + p.g(t_lo)) / (ht * ht);
        op.cp[i] = (1.0 + p.g(t_hi)) / (ht * ht);
    }

    double mean = 0.0;
    for (const auto& m : bd.modes) {
        if (m.k == 0) mean += m.a_cos;
    }

    // Right-hand side from the two Dirichlet rows.
    std::vector<double> b(op.size(), 0.0);
    std::vector<double> bd_vals(ntheta);
    for (std::size_t j = 0; j < ntheta; ++j) {
        bd_vals[j] = bd.eval(2, static_cast<double>(j) * htheta);
        b[j] += op.cm[0] * bd_vals[j];
        b[(nr - 2) * ntheta + j] += op.cp[nr - 2] * mean;
    }

    // Plain conjugate gradients; the operator is symmetric positive definite
    // by construction (conservative fluxes, 1 + g bounded below).
    std::vector<double> x(op.size(), 0.0), r = b, q(op.size()), d = b;
    const double b_norm = std::sqrt(dot(b, b, ex));
    double rr = dot(r, r, ex);
    int iters = 0;
    const int max_iters = 200000;
    if (b_norm > 0.0) {
        while (std::sqrt(rr) > cg_tol * b_norm) {
            op.apply(d, q, ex);
            const double dq = dot(d, q, ex);
            if (!(dq > 0.0)) {
                throw SingularSystem("fd2d_solve: conjugate gradients lost definiteness");
            }
            const double alpha = rr / dq;
            for (std::size_t m = 0; m < x.size(); ++m) x[m] += alpha * d[m];
            for (std::size_t m = 0; m < r.size(); ++m) r[m] -= alpha * q[m];
            const double rr_new = dot(r, r, ex);
            for (std::size_t m = 0; m < d.size(); ++m) d[m] = r[m] + (rr_new / rr) * d[m];
            rr = rr_new;
            if (++iters >= max_iters) {
                throw SingularSystem("fd2d_solve: conjugate gradients did not converge");
            }
        }
        // Recompute the true residual; accumulated recurrences drift.
        op.apply(x, q, ex);
        double true_rr = 0.0;
        for (std::size_t m = 0; m < b.size(); ++m) {
            const double e = b[m] - q[m];
            true_rr += e * e;
        }
        rr = true_rr;
    }

    Fd2dResult res;
    res.cg_iterations = iters;
    res.rel_residual = b_norm > 0.0 ? std::sqrt(rr) / b_norm : 0.0;
    res.t.resize(nr + 1);
    for (std::size_t i = 0; i <= nr; ++i) {
        res.t[i] = (i == nr) ? t_cut : p.t_min() + static_cast<double>(i) * ht;
    }
    res.theta.resize(ntheta);
    for (std::size_t j = 0; j < ntheta; ++j) res.theta[j] = static_cast<double>(j) * htheta;
    res.u.assign((nr + 1) * ntheta, 0.0);
    for (std::size_t j = 0; j < ntheta; ++j) {
        res.u[j] = bd_vals[j];
        res.u[nr * ntheta + j] = mean;
    }
    for (std::size_t i = 1; i < nr; ++i) {
        for (std::size_t j = 0; j < ntheta; ++j) {
            res.u[i * ntheta + j] = x[(i - 1) * ntheta + j];
        }
    }
    return res;
}

std::vector<double> spectral_reference(const RadialProfile& p, const BoundaryData& bd,
                                       const std::vector<double>& t_nodes,
                                       const std::vector<double>& theta_nodes) {
    if (t_nodes.size() < 2) throw ConfigInvalid("spectral_reference: need t nodes");
    const double t_lo = t_nodes.front();
    const double t_hi = t_nodes.back();

    double mean = 0.0;
    for (const auto& m : bd.modes) {
        if (m.k == 0) mean += m.a_cos;
    }

    // Per-mode radial factor solving the two-point problem v(t_lo) = 1,
    // v(t_hi) = 0: integrate backwards from the homogeneous inner condition
    // (v, w) = (0, 1); backward integration follows the forward-decaying
    // direction, so the combination is well conditioned. Steps are chosen to
    // land exactly on the requested nodes.
    const double span = t_hi - t_lo;
    const auto fine_per = static_cast<std::size_t>(
        std::ceil(span / (static_cast<double>(t_nodes.size() - 1) * 1e-3)));
    const std::size_t substeps = std::max<std::size_t>(1, fine_per);

    std::vector<std::vector<double>> factors; // one per mode, on t_nodes
    for (const auto& m : bd.modes) {
        if (m.k == 0) {
            factors.emplace_back();
            continue;
        }
        const double lam = static_cast<double>(m.k) * static_cast<double>(m.k); // n = 2
        std::vector<double> vals(t_nodes.size(), 0.0);
        double v = 0.0, w = 1.0;
        vals.back() = 0.0;
        for (std::size_t seg = t_nodes.size() - 1; seg-- > 0;) {
            const double h = (t_nodes[seg + 1] - t_nodes[seg]) / static_cast<double>(substeps);
            double t = t_nodes[seg + 1];
            for (std::size_t s = 0; s < substeps; ++s) {
                const double tm = t - 0.5 * h;
                const double t0 = t - h;
                auto dv = [&](double tt, double ww) { return ww / (1.0 + p.g(tt)); };
                auto dw = [&](double vv) { return lam * vv; }; // n - 2 = 0
                const double k1v = dv(t, w), k1w = dw(v);
                const double k2v = dv(tm, w - 0.5 * h * k1w);
                const double k2w = dw(v - 0.5 * h * k1v);
                const double k3v = dv(tm, w - 0.5 * h * k2w);
                const double k3w = dw(v - 0.5 * h * k2v);
                const double k4v = dv(t0, w - h * k3w);
                const double k4w = dw(v - h * k3v);
                v -= h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
                w -= h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
                t = t0;
            }
            vals[seg] = v;
        }
        const double scale = vals.front();
        if (scale == 0.0) throw SingularSystem("spectral_reference: degenerate mode");
        for (double& x : vals) x /= scale;
        factors.push_back(std::move(vals));
    }

    std::vector<double> u(t_nodes.size() * theta_nodes.size(), mean);
    for (std::size_t mi = 0; mi < bd.modes.size(); ++mi) {
        const auto& m = bd.modes[mi];
        if (m.k == 0) continue;
        for (std::size_t i = 0; i < t_nodes.size(); ++i) {
            const double rad = factors[mi][i];
            for (std::size_t j = 0; j < theta_nodes.size(); ++j) {
                const double th = theta_nodes[j];
                u[i * theta_nodes.size() + j] +=
                    rad * (m.a_cos * std::cos(m.k * th) + m.a_sin * std::sin(m.k * th));
            }
        }
    }
    return u;
}

LipschitzProbe lipschitz_probe(const RadialProfile& p, int n, const BoundaryData& bd,
                               double fit_lo, double fit_hi, Exec ex) {
    if (n != 2 && n != 3) throw UnsupportedDimension("lipschitz_probe: n must be 2 or 3");
    if (!(fit_lo >= p.t_min() && fit_hi > fit_lo && fit_hi <= p.t_max())) {
        throw ConfigInvalid("lipschitz_probe: fit window outside the profile window");
    }
    for (const auto& m : bd.modes) {
        if (m.k < 1) throw HypothesisUnmet("lipschitz_probe: boundary data must have zero mean");
    }

    const std::size_t nmodes = bd.modes.size();
    std::vector<RadialSolution> sols(nmodes);
    const auto mcount = static_cast<std::ptrdiff_t>(nmodes);
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic) if (ex == Exec::openmp)
    for (std::ptrdiff_t i = 0; i < mcount; ++i) {
        try {
            sols[static_cast<std::size_t>(i)] =
                solve_mode(p, n, bd.modes[static_cast<std::size_t>(i)].k, SolveOptions{});
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    const CumulativeS S = cumulative_S(p, n, 1e-3);

    LipschitzProbe probe;
    probe.fit_lo = fit_lo;
    probe.fit_hi = fit_hi;

    const double hi = std::max(fit_hi, p.t_max() - 8.0);
    const TGrid samples = TGrid::uniform(p.t_min(), hi, 0.05);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, cnt = 0.0;
    for (std::size_t i = 0; i < samples.count; ++i) {
        const double t = samples.at(i);
        double norm2 = 0.0;
        for (std::size_t m = 0; m < nmodes; ++m) {
            const double rk = sols[m].v_at(t) * std::exp(bd.modes[m].k * p.t_min());
            norm2 += mode_weight(n, bd.modes[m]) * rk * rk;
        }
        const double quotient = std::sqrt(norm2) * std::exp(t); // ‖u‖ / ρ
        probe.sup_quotient = std::max(probe.sup_quotient, quotient);
        if (t >= fit_lo && t <= fit_hi && norm2 > 0.0) {
            const double xx = S.at(t);
            const double yy = std::log(quotient);
            sx += xx;
            sy += yy;
            sxx += xx * xx;
            sxy += xx * yy;
            cnt += 1.0;
        }
    }
    const double denom = cnt * sxx - sx * sx;
    // A drift integral that never moves leaves nothing to fit against.
    probe.growth_fit = (cnt >= 2.0 && denom > 1e-18) ? (cnt * sxy - sx * sy) / denom : 0.0;
    return probe;
}

} // namespace gslab
