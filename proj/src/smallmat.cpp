#include "gslab/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gslab {

namespace {

void check_dim(int n) {
    if (n != 2 && n != 3) throw UnsupportedDimension("matrix dimension must be 2 or 3");
}

} // namespace

SymMat SymMat::zero(int n) {
    check_dim(n);
    SymMat m;
    m.n = n;
    return m;
}

SymMat SymMat::identity(int n) {
    return scaled_identity(n, 1.0);
}

SymMat SymMat::scaled_identity(int n, double s) {
    check_dim(n);
    SymMat m;
    m.n = n;
    for (int i = 0; i < n; ++i) m.at(i, i) = s;
    return m;
}

SymMat SymMat::radial_projector(int n, const std::array<double, 3>& theta, double s) {
    check_dim(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) norm2 += theta[static_cast<std::size_t>(i)] * theta[static_cast<std::size_t>(i)];
    if (norm2 <= 0.0) throw ConfigInvalid("radial_projector: zero direction");
    SymMat m;
    m.n = n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m.at(i, j) = s * theta[static_cast<std::size_t>(i)] * theta[static_cast<std::size_t>(j)] / norm2;
        }
    }
    return m;
}

SymMat& SymMat::operator+=(const SymMat& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
}

SymMat& SymMat::operator-=(const SymMat& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
}

SymMat& SymMat::operator*=(double s) {
    for (double& x : a) x *= s;
    return *this;
}

double SymMat::frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
}

double SymMat::spectral_norm() const {
    if (n == 2) {
        const double tr = at(0, 0) + at(1, 1);
        const double det = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
        return std::max(std::abs(0.5 * tr + disc), std::abs(0.5 * tr - disc));
    }
    // Symmetric 3x3: eigenvalues via the trigonometric form of Cardano's
    // method (numerically safe for symmetric input).
    const double q = (at(0, 0) + at(1, 1) + at(2, 2)) / 3.0;
    double p2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d = at(i, i) - q;
        p2 += d * d;
    }
    p2 += 2.0 * (at(0, 1) * at(0, 1) + at(0, 2) * at(0, 2) + at(1, 2) * at(1, 2));
    if (p2 <= 0.0) return std::abs(q); // scalar matrix
    const double p = std::sqrt(p2 / 6.0);
    // B = (A - qI)/p, then det(B)/2 lies in [-1, 1] up to roundoff.
    auto bij = [&](int i, int j) { return (at(i, j) - (i == j ? q : 0.0)) / p; };
    const double detb =
        bij(0, 0) * (bij(1, 1) * bij(2, 2) - bij(1, 2) * bij(2, 1)) -
        bij(0, 1) * (bij(1, 0) * bij(2, 2) - bij(1, 2) * bij(2, 0)) +
        bij(0, 2) * (bij(1, 0) * bij(2, 1) - bij(1, 1) * bij(2, 0));
    const double rr = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(rr) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    return std::max({std::abs(e1), std::abs(e2), std::abs(e3)});
}

double SymMat::max_abs() const {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m = std::max(m, std::abs(at(i, j)));
    return m;
}

double norm_of(const SymMat& m, MatrixNorm which) {
    return which == MatrixNorm::spectral ? m.spectral_norm() : m.frobenius_norm();
}

} // namespace gslab
