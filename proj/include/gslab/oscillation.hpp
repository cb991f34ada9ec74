#pragma once

#include <vector>

#include "gslab/exec.hpp"
#include "gslab/grid.hpp"
#include "gslab/profile.hpp"
#include "gslab/smallmat.hpp"
#include "gslab/verdict.hpp"

namespace gslab {

// Average of g over the ball of radius r = e^{-t_r}, taken with the volume
// measure. In log coordinates:
//   g~(t_r) = n e^{n t_r} ∫_{t_r}^{∞} g(τ) e^{-n τ} dτ.
// The integral is truncated at the window end t_max and corrected with a
// frozen-tail estimate g(t_max) e^{-n (t_max - t_r)}; the remaining error is
// bounded by sup|g| e^{-n (t_max - t_r)} and TailTooLarge is raised when that
// bound is not negligible against the result.
double ball_mean(const RadialProfile& p, int n, double t_r);

// Mean oscillation of the coefficient matrix A = I + g Θ over the ball of
// radius r, measured against the ball average of A (which is I + (g~/n) I for
// radial fields):
//   ω(r) = avg over the ball of ‖ g(ρ) Θ - (g~(r)/n) I ‖.
// The angular slice average has the closed form
//   spectral:  max(|g - c|, |c|),   frobenius:  sqrt((g-c)^2 + (n-1) c^2),
// with c = g~(r)/n; Exec::serial with `quadrature=true` forces the generic
// sphere-quadrature path used to validate the closed form.
double angular_slice_mean(const RadialProfile& p, int n, double t, double gtilde_r,
                          MatrixNorm norm, bool quadrature = false);
double matrix_mean_oscillation(const RadialProfile& p, int n, double t_r,
                               MatrixNorm norm = MatrixNorm::spectral);

// ω sampled on a grid of radii, log-spaced (uniform in t). The grid stops
// short of t_max so every ball-average tail stays below its bound.
struct OscillationCurve {
    std::vector<double> t;
    std::vector<double> r;
    std::vector<double> gtilde;         // ball average of g
    std::vector<double> g_minus_gtilde; // pointwise g(t) - gtilde(t)
    std::vector<double> omega;          // mean oscillation at radius r
    MatrixNorm norm = MatrixNorm::spectral;
};
OscillationCurve oscillation_curve(const RadialProfile& p, int n, const TGrid& tgrid,
                                   MatrixNorm norm = MatrixNorm::spectral,
                                   Exec ex = Exec::serial);

// Default curve grid for a profile: uniform t from t_min to t_max - margin
// with the given step, margin chosen so the ball-average tail bound holds.
TGrid default_curve_grid(const RadialProfile& p, int n, double step = 0.05);

// Dini test of the mean oscillation: ∫_0^{1/2} ω(r)/r dr = ∫ ω(e^{-t}) dt.
// Convergence is decided analytically per family (the window integral is the
// attached evidence); table profiles get windowed verdicts from the curve.
struct DmoReport {
    Verdict verdict;
    double partial_integral = 0.0;
};
DmoReport dmo_test(const RadialProfile& p, int n, const OscillationCurve& curve);
DmoReport dmo_test(const RadialProfile& p, int n);

// Deviation of the oscillating-family ball mean from its first-order closed
// form. For g = sin(t)/t^beta,
//   g(t) - g~(t) ≈ (sin t - n cos t) / ((n^2+1) t^beta)
// to leading order in 1/t; the returned residual is the quadrature value of
// the left side minus the closed-form right side (it decays like t^{-beta-1},
// not faster).
double ex2_identity_residual(double beta, int n, double t);

} // namespace gslab
