#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gslab/exec.hpp"
#include "gslab/profile.hpp"
#include "gslab/radial_ode.hpp"
#include "gslab/verdict.hpp"

namespace gslab {

// Boundary data on the outer sphere r = e^{-t_min}, expanded in spherical
// harmonics. n=2 uses cos(kθ), sin(kθ); n=3 uses zonal harmonics P_k(cos φ).
// The k=0 (mean) component must vanish for the ratio-comparison lemma, which
// measures pure oscillation around the mean.
struct BoundaryData {
    struct Mode {
        int k = 1;
        double a_cos = 0.0;
        double a_sin = 0.0; // unused for n = 3 (zonal expansion)
    };
    std::vector<Mode> modes;

    // Value at angle θ (n=2) or polar cosine μ (n=3).
    double eval(int n, double angle_or_mu) const;
    // Squared L2 norm over the sphere of the boundary trace, by Parseval.
    double norm2(int n) const;

    static BoundaryData random_zero_mean(int n, int mode_count, int k_max, std::uint64_t seed);
};

// Legendre polynomial P_k(x) by the three-term recurrence.
double legendre_pk(int k, double x);

// Sphere-average L2 norm of the solution at inner radius grid points,
// compared against the mode-1 barrier Z:  ratio(ρ) = ‖u(ρ·)‖ / Z(ρ).
// For true solutions this ratio is nondecreasing in ρ; the check verifies
// monotonicity up to tol * max_ratio on a log-spaced radius grid.
struct ComparisonReport {
    std::vector<double> t;     // log-radius sample points, ascending
    std::vector<double> ratio; // ‖u‖ / Z at each sample, ordered by t
    double max_ratio = 0.0;
    // Largest increase of the ratio when moving inward (toward larger t);
    // monotone means this stays at roundoff scale.
    double max_violation = 0.0;
    bool monotone = false;
};
ComparisonReport comparison_check(const RadialProfile& p, int n, const BoundaryData& bd,
                                  double tol = 1e-6, Exec ex = Exec::serial);

// Direct finite-difference solve of the mode-resolved equation on the
// rectangle (t, θ) ∈ [t_min, t_cut] x [0, 2π), n = 2 only:
//   ∂_t((1+g) ∂_t u) - (n-2)(1+g) ∂_t u + ∂_θθ u = 0  (n=2 drops the middle term)
// with u = bd(θ) at t = t_min and u = mean(bd) at t = t_cut (the solution's
// angular oscillation has decayed to nothing there). Five-point conservative
// stencil; symmetric positive definite after negation; conjugate gradients.
struct Fd2dResult {
    std::vector<double> t;     // nr + 1 nodes, t[0] = t_min
    std::vector<double> theta; // ntheta nodes, periodic
    std::vector<double> u;     // (nr+1) x ntheta, row-major in t
    int cg_iterations = 0;
    double rel_residual = 0.0;

    double at(std::size_t i, std::size_t j) const { return u[i * theta.size() + j]; }
};
Fd2dResult fd2d_solve(const RadialProfile& p, const BoundaryData& bd,
                      std::size_t nr, std::size_t ntheta, double t_cut,
                      double cg_tol = 1e-12, Exec ex = Exec::serial);

// Spectral reconstruction of the same boundary-value problem (mode-by-mode
// radial solves on [t_min, t_cut] with v(t_cut) = 0 for k >= 1), evaluated on
// the fd2d grid for direct comparison.
std::vector<double> spectral_reference(const RadialProfile& p, const BoundaryData& bd,
                                       const std::vector<double>& t_nodes,
                                       const std::vector<double>& theta_nodes);

// Lipschitz quotient probe: sup over the window of ‖u(ρ·)‖/ρ and the fitted
// exponent of its growth against the cumulative drift S(t) (the stability
// theory predicts log(‖u‖/ρ) = const + S(t) + o(1) for mode-1-dominated
// data). fit window in t is [fit_lo, fit_hi].
struct LipschitzProbe {
    double sup_quotient = 0.0;
    double growth_fit = 0.0; // least-squares slope of log(‖u‖/ρ) against S(t)
    double fit_lo = 0.0;
    double fit_hi = 0.0;
};
LipschitzProbe lipschitz_probe(const RadialProfile& p, int n, const BoundaryData& bd,
                               double fit_lo, double fit_hi, Exec ex = Exec::serial);

} // namespace gslab
