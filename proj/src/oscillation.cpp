#include "gslab/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "gslab/dynsys.hpp"
#include "gslab/quadrature.hpp"

namespace gslab {

namespace {

// Shared core of the ball averages: the volume mean over B_r of a radial
// integrand f(τ), computed in shifted log coordinates to keep the
// exponentials tame:
//   mean(t_r) = n ∫_0^{t_max - t_r} f(t_r + σ) e^{-nσ} dσ + f(t_max) e^{-n(t_max - t_r)}.
// The second term freezes f beyond the window; the leftover error is bounded
// by (sup|f| + |f(t_max)|) e^{-n (t_max - t_r)}. The bound is tested against
// the magnitude of the absolute-value integral rather than the (possibly
// cancelling) signed result, so isolated zeros of the mean do not trip the
// check while genuinely short tails still do.
double ball_average(const std::function<double(double)>& f, double t_r, double t_max,
                    double sup_abs_f, int n) {
    const double s = t_max - t_r;
    if (!(s > 0.0)) throw OutOfDomain("ball average needs t_r strictly inside the window");
    const double nn = static_cast<double>(n);
    const double cut = std::min(s, 800.0 / nn); // e^{-nσ} underflows past this

    const double signed_part = nn * integrate_adaptive(
        [&](double sigma) { return f(t_r + sigma) * std::exp(-nn * sigma); }, 0.0, cut,
        1e-12, 1e-14);
    const double abs_part = nn * integrate_adaptive(
        [&](double sigma) { return std::abs(f(t_r + sigma)) * std::exp(-nn * sigma); }, 0.0,
        cut, 1e-10, 1e-14);

    const double edge = std::exp(-nn * s);
    const double value = signed_part + f(t_max) * edge;
    const double tail_bound = 2.0 * sup_abs_f * edge;
    const double scale = std::max(std::abs(value), abs_part);
    if (tail_bound > 1e-10 * scale) {
        throw TailTooLarge("ball average at t = " + std::to_string(t_r) +
                           ": window tail bound " + std::to_string(tail_bound) +
                           " is not negligible against " + std::to_string(scale));
    }
    return value;
}

} // namespace

double ball_mean(const RadialProfile& p, int n, double t_r) {
    if (n != 2 && n != 3) throw UnsupportedDimension("ball_mean: n must be 2 or 3");
    if (t_r < p.t_min() - 1e-9) throw OutOfDomain("ball_mean: t_r below the window");
    return ball_average([&](double t) { return p.g(t); }, t_r, p.t_max(), p.sup_abs_g(), n);
}

double angular_slice_mean(const RadialProfile& p, int n, double t, double gtilde_r,
                          MatrixNorm norm, bool quadrature) {
    if (n != 2 && n != 3) throw UnsupportedDimension("angular_slice_mean: n must be 2 or 3");
    const double g = p.g(t);
    const double c = gtilde_r / static_cast<double>(n);
    if (!quadrature) {
        // g Θ - c I has eigenvalue g - c on the radial direction and -c on
        // the (n-1)-dimensional tangent space, for every θ.
        if (norm == MatrixNorm::spectral) return std::max(std::abs(g - c), std::abs(c));
        return std::sqrt((g - c) * (g - c) + static_cast<double>(n - 1) * c * c);
    }
    const SphereRule sr = sphere_rule(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < sr.dirs.size(); ++i) {
        SymMat m = SymMat::radial_projector(n, sr.dirs[i], g);
        m -= SymMat::scaled_identity(n, c);
        acc += sr.weights[i] * norm_of(m, norm);
    }
    return acc;
}

double matrix_mean_oscillation(const RadialProfile& p, int n, double t_r, MatrixNorm norm) {
    if (n != 2 && n != 3) throw UnsupportedDimension("matrix_mean_oscillation: n must be 2 or 3");
    const double gtilde = ball_mean(p, n, t_r);
    // The slice mean is bounded by |g| + 2|c|, c = gtilde/n <= sup|g|/n.
    const double sup_slice = p.sup_abs_g() * (1.0 + 2.0 / static_cast<double>(n));
    return ball_average(
        [&](double t) { return angular_slice_mean(p, n, t, gtilde, norm); }, t_r, p.t_max(),
        sup_slice, n);
}

TGrid default_curve_grid(const RadialProfile& p, int n, double step) {
    // Walk the upper edge down until the ball-average tails clear their
    // bounds; profiles decaying fast near r = 0 need a wider safety strip.
    const double lo = p.t_min();
    double edge = p.t_max() - std::ceil(23.0 / static_cast<double>(n));
    for (; edge > lo + 1.0; edge -= 1.0) {
        try {
            (void)matrix_mean_oscillation(p, n, edge);
            break;
        } catch (const TailTooLarge&) {
        }
    }
    if (!(edge > lo + 0.5)) {
        throw TailTooLarge("window too short for a mean-oscillation curve");
    }
    return TGrid::uniform(lo, edge, step);
}

OscillationCurve oscillation_curve(const RadialProfile& p, int n, const TGrid& tgrid,
                                   MatrixNorm norm, Exec ex) {
    if (n != 2 && n != 3) throw UnsupportedDimension("oscillation_curve: n must be 2 or 3");
    OscillationCurve curve;
    curve.norm = norm;
    curve.t.resize(tgrid.count);
    curve.r.resize(tgrid.count);
    curve.gtilde.resize(tgrid.count);
    curve.g_minus_gtilde.resize(tgrid.count);
    curve.omega.resize(tgrid.count);

    std::exception_ptr first_error = nullptr;
    const auto npts = static_cast<std::ptrdiff_t>(tgrid.count);

    auto fill_point = [&](std::size_t i) {
        const double t = tgrid.at(i);
        curve.t[i] = t;
        curve.r[i] = std::exp(-t);
        curve.gtilde[i] = ball_mean(p, n, t);
        curve.g_minus_gtilde[i] = p.g(t) - curve.gtilde[i];
        curve.omega[i] = ball_average(
            [&](double tau) { return angular_slice_mean(p, n, tau, curve.gtilde[i], norm); },
            t, p.t_max(), p.sup_abs_g() * (1.0 + 2.0 / static_cast<double>(n)), n);
    };

    if (ex == Exec::openmp) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < npts; ++i) {
            try {
                fill_point(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!first_error) first_error = std::current_exception();
            }
        }
    } else {
        for (std::ptrdiff_t i = 0; i < npts; ++i) fill_point(static_cast<std::size_t>(i));
    }
    if (first_error) std::rethrow_exception(first_error);
    return curve;
}

DmoReport dmo_test(const RadialProfile& p, int n, const OscillationCurve& curve) {
    if (n != 2 && n != 3) throw UnsupportedDimension("dmo_test: n must be 2 or 3");
    if (curve.t.size() < 3) throw ConfigInvalid("dmo_test: curve too short");
    const double h = curve.t[1] - curve.t[0];
    const double partial = integrate_samples(curve.omega, h);

    DmoReport rep;
    rep.partial_integral = partial;

    // ∫_0 ω(r)/r dr converges iff ∫ ω(e^{-t}) dt does; for the closed-form
    // families ω(e^{-t}) ≍ |g(t)| + |g̃(t)| with both sides comparable, so the
    // verdict matches the Dini test thresholds. Tables are judged on the
    // window.
    switch (p.family()) {
        case Family::zero:
            rep.verdict = {VerdictStatus::holds_analytic, partial};
            break;
        case Family::constant:
            rep.verdict = {p.constant_c() == 0.0 ? VerdictStatus::holds_analytic
                                                 : VerdictStatus::fails_analytic,
                           partial};
            break;
        case Family::ex1_pos:
        case Family::ex1_neg:
            rep.verdict = {p.gamma() > 1.0 ? VerdictStatus::holds_analytic
                                           : VerdictStatus::fails_analytic,
                           partial};
            break;
        case Family::ex2:
            rep.verdict = {p.beta() > 1.0 ? VerdictStatus::holds_analytic
                                          : VerdictStatus::fails_analytic,
                           partial};
            break;
        case Family::ex3:
            rep.verdict = {VerdictStatus::fails_analytic, partial};
            break;
        case Family::table: {
            const double edge = curve.t.back();
            const double dec = std::min(10.0, 0.5 * (edge - curve.t.front()));
            double last = 0.0, before = 0.0;
            for (std::size_t i = 0; i + 1 < curve.t.size(); ++i) {
                const double piece = 0.5 * (curve.omega[i] + curve.omega[i + 1]) * h;
                if (curve.t[i] >= edge - dec) last += piece;
                else if (curve.t[i] >= edge - 2.0 * dec) before += piece;
            }
            if (last < 1e-6) {
                rep.verdict = {VerdictStatus::holds_numeric_window, partial};
            } else if (partial > 1e3 && last >= before) {
                rep.verdict = {VerdictStatus::fails_numeric_window, partial};
            } else {
                rep.verdict = {VerdictStatus::inconclusive, partial};
            }
            break;
        }
    }
    return rep;
}

DmoReport dmo_test(const RadialProfile& p, int n) {
    const OscillationCurve curve =
        oscillation_curve(p, n, default_curve_grid(p, n), MatrixNorm::spectral, Exec::serial);
    return dmo_test(p, n, curve);
}

double ex2_identity_residual(double beta, int n, double t) {
    if (n != 2 && n != 3) throw UnsupportedDimension("ex2_identity_residual: n must be 2 or 3");
    if (!(t >= 2.0)) throw ConfigInvalid("ex2_identity_residual: needs t >= 2");
    // A private window around t wide enough that the ball-average tail is
    // far below the residual scale.
    const RadialProfile p = RadialProfile::ex2(beta, t - 1.0, t + 45.0);
    const double gtilde = ball_mean(p, n, t);
    const double nn = static_cast<double>(n);
    const double closed =
        (std::sin(t) - nn * std::cos(t)) / ((nn * nn + 1.0) * std::pow(t, beta));
    return (p.g(t) - gtilde) - closed;
}

} // namespace gslab
