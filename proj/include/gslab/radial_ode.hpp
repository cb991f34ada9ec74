#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "gslab/grid.hpp"
#include "gslab/profile.hpp"
#include "gslab/verdict.hpp"

namespace gslab {

// Radial factor of a single spherical-harmonic mode, in log-radius form.
// With t = -log r and w = (1 + g) dv/dt, the mode-k equation becomes the
// first-order system
//   dv/dt = w / (1 + g(t)),
//   dw/dt = lambda_k v + (n - 2) w,      lambda_k = k (k + n - 2).
// Solutions of interest decay like e^{-kt} (= r^k) as t grows; they are
// computed by integrating backwards from t_max where the decaying direction
// dominates, then rescaling.
struct RadialSolution {
    TGrid grid;
    std::vector<double> v; // radial factor, v(t) ~ r^k scale
    std::vector<double> w; // flux variable (1+g) dv/dt
    int n = 2;
    int k = 1;

    double r_at(std::size_t i) const { return std::exp(-grid.at(i)); }
    // v / r^k, the quantity that stays O(1) for the decaying solution.
    double v_over_rk(std::size_t i) const;
    // Linear interpolation of v at arbitrary t inside the window.
    double v_at(double t) const;
};

struct SolveOptions {
    double step = 1e-3;
    // Amplitude of v at t_min after normalization; the default makes the
    // k-mode solution equal r^k for g = 0.
    // v(t_min) = amplitude * e^{-k t_min}.
    double amplitude = 1.0;
};

// Decaying solution of the mode-k system, normalized at the outer boundary.
// Backwards RK4 from the seed v = e^{-k t_max}, w = -k (1+g(t_max)) v (the
// decaying eigenvector of the g = 0 system); contamination by the growing
// mode shrinks like e^{-(2 alpha + n - 2)(t_max - t)} away from the seed.
RadialSolution solve_mode(const RadialProfile& p, int n, int k, const SolveOptions& opt = {});

// Mode-1 decaying solution Z with Z(r) = v(t), normalized so v(t_min) =
// e^{-t_min} (i.e. Z(r) = r at the outer edge of the window for g = 0).
// Z must stay positive; a sign change means the ellipticity or the step is
// broken and raises SignChange.
RadialSolution solve_Z(const RadialProfile& p, int n, const SolveOptions& opt = {});

// Scale-invariant residual of the mode-k equation for a candidate given in
// closed form: sup over the grid of
//   | d/dt[(1+g) v'] - (n-2)(1+g) v' - lambda_k v | / max(|v|, floor).
// The derivatives are supplied analytically by the caller.
double ode_residual(const RadialProfile& p, int n, int k,
                    const std::function<double(double)>& v,
                    const std::function<double(double)>& dv_dt,
                    const std::function<double(double)>& d2v_dt2,
                    const TGrid& grid);

// Same residual for a computed solution, using staggered midpoint
// differences of w (w is C^1 even when g is merely piecewise smooth, so only
// w is differenced; g is never differentiated).
double ode_residual(const RadialProfile& p, const RadialSolution& s);

// H^1 energy of the radial factor on the window, in t-form:
//   ∫ (|v'(r)|^2 + r^{-2} v^2) r^{n-1} dr = ∫ (v'^2 + v^2) e^{-(n-2)t} dt.
// Finite for the decaying solution; the growing mode makes the integral blow
// up as t_max grows. The verdict compares the last decade's contribution to
// the total: a convergent tail puts almost nothing there.
struct EnergyReport {
    double value = 0.0;
    Verdict verdict;
};
EnergyReport finite_energy(const RadialProfile& p, const RadialSolution& s);

// Comparison of the computed mode-1 solution with the first-order asymptotic
// model  v_model(t) = c_fit * exp(-t + S(t)),  where S is the cumulative
// drift integral. The model is exact when g has vanishing higher-order
// remainder; the report gives the sup of |log v - log v_model| past fit_t.
// Requires finite total variation of g (otherwise the asymptotic form is not
// justified and HypothesisUnmet is raised).
struct AsymptoticReport {
    double c_fit = 0.0;
    double fit_t = 0.0;
    double drift = 0.0; // sup |log v - log model| over [fit_t, t_max]
};
AsymptoticReport asymptotic_ratio(const RadialProfile& p, const RadialSolution& s,
                                  double fit_t);

// Window test of the barrier property Z(r) <= C r. Computes
//   q(t) = log( v(t) / (amplitude * e^{-t}) )
// and fits its trend over the last decade of t. HOLDS when the ratio stays
// bounded with flat-or-decreasing trend; FAILS on sustained growth; else
// INCONCLUSIVE. Evidence = fitted slope per unit t.
struct ZLinearReport {
    double sup_ratio = 0.0;   // sup of v / (amplitude e^{-t})
    double slope = 0.0;       // least-squares slope of q over the last decade
    double rise_total = 0.0;  // q(t_max) - min q
    double log_ratio_max = 0.0;
    Verdict verdict;
};
ZLinearReport z_linear_bound(const RadialSolution& s);

} // namespace gslab
