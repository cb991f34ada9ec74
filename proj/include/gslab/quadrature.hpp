#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gslab {

// Adaptive Simpson integration of f over [a, b]. Recursion splits an interval
// until the Richardson error estimate meets rel_tol (relative to the running
// whole-interval magnitude) or abs_tol, whichever is looser at that node.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-12);

// Cumulative integral of uniformly sampled values: out[i] = ∫_{x0}^{x_i} f.
// Composite Simpson over pairs of intervals; the odd final node (when it
// exists) uses the 3-point right-open Newton-Cotes rule so that every prefix
// is 4th-order accurate.
std::vector<double> cumulative_simpson(const std::vector<double>& f, double h);

// Definite integral of uniformly sampled values over the whole grid
// (composite Simpson, same odd-interval handling as cumulative_simpson).
double integrate_samples(const std::vector<double>& f, double h);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t npoints);

// Mean of f over the unit circle parameterized by angle, i.e.
// (1/2π)∫ f(θ) dθ with the trapezoid rule on a periodic uniform grid
// (spectrally accurate for smooth periodic integrands).
double circle_mean(const std::function<double(double)>& f, std::size_t npoints = 512);

} // namespace gslab
