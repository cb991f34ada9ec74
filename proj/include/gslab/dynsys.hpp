#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "gslab/exec.hpp"
#include "gslab/grid.hpp"
#include "gslab/profile.hpp"
#include "gslab/smallmat.hpp"
#include "gslab/verdict.hpp"

namespace gslab {

// Coefficient matrix field A(x) sampled at radius r and unit direction theta
// (theta has n meaningful components).
using MatrixField = std::function<SymMat(double r, const std::array<double, 3>& theta)>;

// The field delta_ij + g(r) theta_i theta_j for a radial profile.
MatrixField radial_field(const RadialProfile& p, int n);

// Angular resolution for sphere averages: n=2 uses a periodic trapezoid rule
// with `azimuth` points; n=3 uses Gauss-Legendre in the polar cosine with
// `polar` points times a trapezoid in azimuth.
struct AngularRule {
    std::size_t azimuth = 512;
    std::size_t polar = 64;
};

// Discrete directions and mean weights (summing to 1) realizing the sphere
// average for the rule above.
struct SphereRule {
    std::vector<std::array<double, 3>> dirs;
    std::vector<double> weights;
};
SphereRule sphere_rule(int n, const AngularRule& rule = {});

// Drift matrix of the first-order system satisfied by sphere averages of
// solutions:
//   R(r) = mean over theta in S^{n-1} of [ A(r theta) - n A(r theta) theta theta^T ],
// entering as dφ/dt + R(e^{-t}) φ = 0. For radial fields it collapses to
// -((n-1)/n) g(r) I; the quadrature path validates that reduction and also
// handles non-radial fields.
SymMat compute_R_matrix(const MatrixField& A, int n, double r,
                        const AngularRule& rule = {}, Exec ex = Exec::serial);

// S(t) = ((n-1)/n) ∫_{t_min}^{t} g(τ) dτ on a uniform grid: the integrated
// drift of the scalar reduction dφ/dt = ((n-1)/n) g(t) φ of the averaged
// system, so φ(t) = φ(t_min) e^{S(t)}. Bounded window increments of S mean
// uniform stability; S -> -inf means the mode-1 amplitude is o(r).
struct CumulativeS {
    TGrid grid;
    std::vector<double> values;
    double at(double t) const; // linear interpolation between grid nodes
};
CumulativeS cumulative_S(const RadialProfile& p, int n, double step = 1e-3);

struct StabilityReport {
    CumulativeS S;
    // sup over windows [s, t] within the grid of S(t) - S(s): uniform
    // stability of the averaged system means this stays bounded as the window
    // end goes to r -> 0.
    double sup_increment = 0.0;
    Verdict uniform_stable;   // bounded window increments of S
    Verdict asympt_constant;  // S(t) converges in the extended sense (-inf allowed)
    Verdict limsup_divergent; // limsup S(t) = +inf (drift integral diverges upward)
    Verdict s_minus_inf;      // S(t) -> -inf
};
StabilityReport stability_report(const RadialProfile& p, int n, double step = 1e-3);

// Final classification of regularity at the origin for weak solutions of
// div(A grad u) = 0 with A = I + g(r) theta theta^T.
struct Classified {
    Verdict verdict;
    RuleTag rule = RuleTag::direct;
};

struct RegularityVerdict {
    Classified lipschitz_at_0;
    Classified differentiable_at_0;
    Classified c1_neighborhood;
    Classified non_lipschitz_exists;
    Classified grad_zero_at_0;

    ModulusReport modulus;
    StabilityReport stability;

    // Filled when the radial-barrier fallback ran (square-Dini inconclusive
    // or failed without a blow-up proof): the evidence is the fitted trend of
    // log(Z(t)/r(t)); see radial_ode.hpp.
    std::optional<Verdict> z_linear;
};

struct ClassifyOptions {
    double ode_step = 1e-3;  // step for the radial-barrier fallback solve
    double s_step = 1e-3;    // step for the cumulative drift integral
    double T_test = std::numeric_limits<double>::infinity();
};

RegularityVerdict classify(const RadialProfile& p, int n, const ClassifyOptions& opt = {});

} // namespace gslab
