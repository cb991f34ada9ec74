#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "gslab/errors.hpp"
#include "gslab/smallmat.hpp"

using gslab::MatrixNorm;
using gslab::norm_of;
using gslab::SymMat;

TEST_CASE("factories produce the advertised entries") {
    const SymMat z = SymMat::zero(3);
    const SymMat id = SymMat::identity(2);
    const SymMat s = SymMat::scaled_identity(3, -2.5);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(z.at(i, j) == 0.0);
            if (i < 2 && j < 2) CHECK(id.at(i, j) == (i == j ? 1.0 : 0.0));
            CHECK(s.at(i, j) == (i == j ? -2.5 : 0.0));
        }
    }
    CHECK_THROWS_AS(SymMat::zero(4), gslab::UnsupportedDimension);
    CHECK_THROWS_AS(SymMat::identity(1), gslab::UnsupportedDimension);
}

TEST_CASE("radial projector normalizes the direction") {
    const SymMat p = SymMat::radial_projector(2, {3.0, 4.0, 0.0}, 2.0);
    // Unit direction (0.6, 0.8); entries are 2 θi θj.
    CHECK(p.at(0, 0) == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(p.at(0, 1) == doctest::Approx(0.96).epsilon(1e-15));
    CHECK(p.at(1, 0) == doctest::Approx(0.96).epsilon(1e-15));
    CHECK(p.at(1, 1) == doctest::Approx(1.28).epsilon(1e-15));

    // A projector built from a unit vector has spectral norm |s| and trace s.
    const SymMat q = SymMat::radial_projector(3, {1.0, -2.0, 2.0}, -0.7);
    CHECK(q.spectral_norm() == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(q.at(0, 0) + q.at(1, 1) + q.at(2, 2) == doctest::Approx(-0.7).epsilon(1e-13));
}

TEST_CASE("norms of diagonal matrices match closed forms") {
    SymMat d = SymMat::zero(3);
    d.at(0, 0) = 3.0;
    d.at(1, 1) = -5.0;
    d.at(2, 2) = 2.0;
    CHECK(d.spectral_norm() == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(d.frobenius_norm() == doctest::Approx(std::sqrt(38.0)).epsilon(1e-14));
    CHECK(d.max_abs() == 5.0);

    SymMat d2 = SymMat::zero(2);
    d2.at(0, 0) = 3.0;
    d2.at(1, 1) = -5.0;
    CHECK(d2.spectral_norm() == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(d2.frobenius_norm() == doctest::Approx(std::sqrt(34.0)).epsilon(1e-14));
}

TEST_CASE("spectral norm recovers eigenvalues of a synthetic spectral decomposition") {
    // Orthonormal triple built from a rotation of the axes.
    const double c = std::cos(0.4), s = std::sin(0.4);
    const std::array<std::array<double, 3>, 3> basis = {{
        {c, s, 0.0},
        {-s * std::cos(1.1), c * std::cos(1.1), std::sin(1.1)},
        {s * std::sin(1.1), -c * std::sin(1.1), std::cos(1.1)},
    }};
    const std::array<double, 3> eig = {1.5, -4.0, 0.25};
    SymMat m = SymMat::zero(3);
    for (int v = 0; v < 3; ++v) {
        m += SymMat::radial_projector(3, basis[static_cast<std::size_t>(v)],
                                      eig[static_cast<std::size_t>(v)]);
    }
    CHECK(m.spectral_norm() == doctest::Approx(4.0).epsilon(1e-12));
    const double frob = std::sqrt(1.5 * 1.5 + 16.0 + 0.0625);
    CHECK(m.frobenius_norm() == doctest::Approx(frob).epsilon(1e-13));
}

TEST_CASE("spectral norm dominates the Rayleigh quotient of random vectors") {
    std::mt19937_64 rng(999);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = (trial % 2 == 0) ? 2 : 3;
        SymMat m = SymMat::zero(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double v = entry(rng);
                m.at(i, j) = v;
                m.at(j, i) = v;
            }
        }
        const double spec = m.spectral_norm();
        CHECK(spec <= m.frobenius_norm() * (1.0 + 1e-12));
        for (int probe = 0; probe < 20; ++probe) {
            std::array<double, 3> x = {0.0, 0.0, 0.0};
            double nrm2 = 0.0;
            for (int i = 0; i < n; ++i) {
                x[static_cast<std::size_t>(i)] = entry(rng);
                nrm2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            }
            if (nrm2 == 0.0) continue;
            double quad = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    quad += x[static_cast<std::size_t>(i)] * m.at(i, j) *
                            x[static_cast<std::size_t>(j)];
                }
            }
            CHECK(std::abs(quad) / nrm2 <= spec * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("arithmetic composes entrywise") {
    SymMat a = SymMat::identity(2);
    SymMat b = SymMat::scaled_identity(2, 3.0);
    a += b;
    CHECK(a.at(0, 0) == 4.0);
    a -= SymMat::identity(2);
    CHECK(a.at(1, 1) == 3.0);
    a *= -0.5;
    CHECK(a.at(0, 0) == -1.5);
    CHECK(a.at(0, 1) == 0.0);

    const SymMat sum = SymMat::identity(3) + SymMat::scaled_identity(3, 1.0);
    CHECK(sum.at(2, 2) == 2.0);
}

TEST_CASE("norm_of dispatches on the enum") {
    SymMat d = SymMat::zero(2);
    d.at(0, 0) = 3.0;
    d.at(1, 1) = -4.0;
    CHECK(norm_of(d, MatrixNorm::spectral) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(norm_of(d, MatrixNorm::frobenius) == doctest::Approx(5.0).epsilon(1e-14));
}
