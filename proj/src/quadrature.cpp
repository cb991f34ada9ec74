#include "gslab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "gslab/errors.hpp"

namespace gslab {

namespace {

struct SimpsonNode {
    double a, b;
    double fa, fm, fb;
    double whole; // Simpson estimate on [a, b]
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, const SimpsonNode& node,
                     double rel_tol, double abs_tol, double scale, int depth) {
    const double m = 0.5 * (node.a + node.b);
    const double lm = 0.5 * (node.a + m);
    const double rm = 0.5 * (m + node.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(node.a, m, node.fa, flm, node.fm);
    const double right = simpson(m, node.b, node.fm, frm, node.fb);
    const double err = (left + right - node.whole) / 15.0;
    const double tol = std::max(abs_tol, rel_tol * std::max(scale, std::abs(left + right)));
    if (depth <= 0 || std::abs(err) <= tol) {
        return left + right + err; // Richardson extrapolation
    }
    SimpsonNode ln{node.a, m, node.fa, flm, node.fm, left};
    SimpsonNode rn{m, node.b, node.fm, frm, node.fb, right};
    return adaptive_step(f, ln, rel_tol, abs_tol * 0.5, scale, depth - 1) +
           adaptive_step(f, rn, rel_tol, abs_tol * 0.5, scale, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
    if (a == b) return 0.0;
    const double sign = (b > a) ? 1.0 : -1.0;
    if (b < a) std::swap(a, b);
    // A first non-adaptive pass over a few panels sets the magnitude scale so
    // that the relative tolerance does not collapse on integrands that nearly
    // cancel.
    constexpr int panels = 8;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == panels) ? b : x0 + h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        SimpsonNode node{x0, x1, f0, fm, f1, simpson(x0, x1, f0, fm, f1)};
        total += adaptive_step(f, node, rel_tol, abs_tol / panels,
                               std::abs(node.whole), 48);
    }
    return sign * total;
}

std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
    const std::size_t m = f.size();
    if (m < 2) throw ConfigInvalid("cumulative_simpson: need at least two samples");
    std::vector<double> out(m, 0.0);
    for (std::size_t i = 0; i + 2 < m; i += 2) {
        out[i + 1] = out[i] + h / 12.0 * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]);
        out[i + 2] = out[i] + h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    }
    if (m % 2 == 0) {
        // Odd number of intervals: close the last one with the mirrored
        // three-point rule, which keeps 4th-order accuracy.
        const std::size_t i = m - 2;
        if (m >= 3) {
            out[i + 1] = out[i] + h / 12.0 * (-f[i - 1] + 8.0 * f[i] + 5.0 * f[i + 1]);
        } else {
            out[1] = 0.5 * h * (f[0] + f[1]);
        }
    }
    return out;
}

double integrate_samples(const std::vector<double>& f, double h) {
    return cumulative_simpson(f, h).back();
}

GaussRule gauss_legendre(std::size_t npoints) {
    if (npoints == 0) throw ConfigInvalid("gauss_legendre: need at least one point");
    GaussRule rule;
    rule.nodes.resize(npoints);
    rule.weights.resize(npoints);
    const std::size_t half = (npoints + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(npoints) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= npoints; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = npoints * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[npoints - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[npoints - 1 - i] = w;
    }
    if (npoints % 2 == 1) rule.nodes[npoints / 2] = 0.0;
    return rule;
}

double circle_mean(const std::function<double(double)>& f, std::size_t npoints) {
    if (npoints == 0) throw ConfigInvalid("circle_mean: need at least one point");
    double sum = 0.0;
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(npoints);
    for (std::size_t j = 0; j < npoints; ++j) {
        sum += f(static_cast<double>(j) * dtheta);
    }
    return sum / static_cast<double>(npoints);
}

} // namespace gslab
