#pragma once

#include <array>
#include <cstddef>

#include "gslab/errors.hpp"

namespace gslab {

// Dense symmetric n x n matrix for n in {2, 3}, stored row-major in a fixed
// 3x3 buffer. Big enough for the coefficient matrices handled here; no
// dynamic allocation on the hot paths.
struct SymMat {
    int n = 2;
    std::array<double, 9> a{}; // row-major, only the leading n x n block is used

    static SymMat zero(int n);
    static SymMat identity(int n);
    // I scaled by s.
    static SymMat scaled_identity(int n, double s);
    // Rank-one projector theta theta^T scaled by s (theta need not be unit;
    // it is normalized internally).
    static SymMat radial_projector(int n, const std::array<double, 3>& theta, double s);

    double& at(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

    SymMat& operator+=(const SymMat& o);
    SymMat& operator-=(const SymMat& o);
    SymMat& operator*=(double s);

    friend SymMat operator+(SymMat l, const SymMat& r) { return l += r; }
    friend SymMat operator-(SymMat l, const SymMat& r) { return l -= r; }
    friend SymMat operator*(SymMat l, double s) { return l *= s; }

    double frobenius_norm() const;
    // Largest absolute eigenvalue (operator norm for symmetric matrices).
    // Closed form at n=2, Cardano at n=3.
    double spectral_norm() const;
    // Largest |entry|, used for cheap agreement checks.
    double max_abs() const;
};

enum class MatrixNorm {
    spectral,
    frobenius,
};

double norm_of(const SymMat& m, MatrixNorm which);

} // namespace gslab
