#include <doctest.h>

#include <cmath>

#include "gslab/errors.hpp"
#include "gslab/exec.hpp"
#include "gslab/oscillation.hpp"
#include "gslab/profile.hpp"
#include "gslab/smallmat.hpp"
#include "gslab/verdict.hpp"

using gslab::angular_slice_mean;
using gslab::ball_mean;
using gslab::default_curve_grid;
using gslab::DmoReport;
using gslab::dmo_test;
using gslab::Exec;
using gslab::matrix_mean_oscillation;
using gslab::MatrixNorm;
using gslab::OscillationCurve;
using gslab::oscillation_curve;
using gslab::RadialProfile;
using gslab::TGrid;
using gslab::VerdictStatus;

TEST_CASE("ball averages of power decay match the frozen quadrature values") {
    const RadialProfile p = RadialProfile::ex1_pos(1.0);
    CHECK(ball_mean(p, 2, 10.0) == doctest::Approx(0.095437090987).epsilon(1e-9));
    CHECK(ball_mean(p, 2, 20.0) == doctest::Approx(0.048808230164).epsilon(1e-9));
    CHECK(ball_mean(p, 3, 10.0) == doctest::Approx(0.096869216276).epsilon(1e-9));
    CHECK(ball_mean(p, 3, 20.0) == doctest::Approx(0.049193141124).epsilon(1e-9));
}

TEST_CASE("ball averages follow the large-t expansion of the power family") {
    // g~ = t^-g - (g/n) t^-g-1 + g(g+1)/n^2 t^-g-2 + O(t^-g-3).
    for (int n : {2, 3}) {
        for (double gamma : {0.75, 1.0, 1.5}) {
            const RadialProfile p = RadialProfile::ex1_pos(gamma);
            const double t = 20.0;
            const double expand = std::pow(t, -gamma) -
                                  gamma / n * std::pow(t, -gamma - 1.0) +
                                  gamma * (gamma + 1.0) / (n * n) * std::pow(t, -gamma - 2.0);
            CHECK(ball_mean(p, n, t) == doctest::Approx(expand).epsilon(5e-5));
        }
    }
}

TEST_CASE("a constant profile is its own ball average") {
    const RadialProfile p = RadialProfile::constant(0.1);
    CHECK(ball_mean(p, 2, 10.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(ball_mean(p, 3, 25.0) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("ball averages refuse radii whose truncated tail is not negligible") {
    const RadialProfile p = RadialProfile::ex1_pos(1.0);
    CHECK_THROWS_AS(ball_mean(p, 2, 39.0), gslab::TailTooLarge);
}

TEST_CASE("angular slice means have the advertised closed forms") {
    const RadialProfile p = RadialProfile::constant(0.1);
    const double gt = ball_mean(p, 2, 10.0);
    const double spec = angular_slice_mean(p, 2, 10.0, gt, MatrixNorm::spectral);
    const double frob = angular_slice_mean(p, 2, 10.0, gt, MatrixNorm::frobenius);
    CHECK(spec == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(frob == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-12));

    // The generic sphere-quadrature path agrees with the closed form.
    for (int n : {2, 3}) {
        const RadialProfile q = RadialProfile::ex2(1.0);
        const double gtq = ball_mean(q, n, 12.0);
        for (MatrixNorm norm : {MatrixNorm::spectral, MatrixNorm::frobenius}) {
            const double closed = angular_slice_mean(q, n, 12.0, gtq, norm);
            const double quad = angular_slice_mean(q, n, 12.0, gtq, norm, true);
            CHECK(quad == doctest::Approx(closed).epsilon(1e-10));
        }
    }

    // Spectral slice dominates both deviation terms it maximizes over.
    const RadialProfile w = RadialProfile::ex1_pos(0.75);
    const double gtw = ball_mean(w, 2, 15.0);
    const double slice = angular_slice_mean(w, 2, 15.0, gtw, MatrixNorm::spectral);
    CHECK(slice >= std::abs(w.g(15.0) - gtw / 2.0) - 1e-15);
    CHECK(slice >= std::abs(gtw / 2.0) - 1e-15);
}

TEST_CASE("mean oscillation of a constant field is the constant slice value") {
    const RadialProfile p = RadialProfile::constant(0.1);
    CHECK(matrix_mean_oscillation(p, 2, 10.0) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(matrix_mean_oscillation(p, 2, 10.0, MatrixNorm::frobenius) ==
          doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("oscillation curves populate consistent columns") {
    const RadialProfile p = RadialProfile::ex1_pos(1.0);
    const TGrid grid = default_curve_grid(p, 2);
    CHECK(grid.t_min == p.t_min());
    CHECK(grid.t_max < p.t_max());

    const OscillationCurve c = oscillation_curve(p, 2, grid);
    REQUIRE(c.t.size() == grid.count);
    REQUIRE(c.r.size() == grid.count);
    REQUIRE(c.gtilde.size() == grid.count);
    REQUIRE(c.g_minus_gtilde.size() == grid.count);
    REQUIRE(c.omega.size() == grid.count);
    for (std::size_t i = 0; i < c.t.size(); i += 37) {
        CHECK(c.r[i] == doctest::Approx(std::exp(-c.t[i])).epsilon(1e-14));
        CHECK(c.g_minus_gtilde[i] ==
              doctest::Approx(p.g(c.t[i]) - c.gtilde[i]).epsilon(1e-12).scale(1.0));
        CHECK(c.omega[i] >= 0.0);
    }
}

TEST_CASE("parallel and serial curve evaluation agree exactly") {
    const RadialProfile p = RadialProfile::ex2(1.0);
    const TGrid grid = default_curve_grid(p, 2, 0.2);
    const OscillationCurve a = oscillation_curve(p, 2, grid, MatrixNorm::spectral, Exec::serial);
    const OscillationCurve b = oscillation_curve(p, 2, grid, MatrixNorm::spectral, Exec::openmp);
    REQUIRE(a.omega.size() == b.omega.size());
    for (std::size_t i = 0; i < a.omega.size(); ++i) {
        CHECK(a.omega[i] == b.omega[i]);
        CHECK(a.gtilde[i] == b.gtilde[i]);
    }
}

TEST_CASE("Dini test of the mean oscillation per family") {
    CHECK(dmo_test(RadialProfile::zero(), 2).verdict.status == VerdictStatus::holds_analytic);
    CHECK(dmo_test(RadialProfile::constant(0.1), 2).verdict.status ==
          VerdictStatus::fails_analytic);

    const DmoReport fast = dmo_test(RadialProfile::ex1_pos(1.5), 2);
    CHECK(fast.verdict.status == VerdictStatus::holds_analytic);
    CHECK(fast.partial_integral == doctest::Approx(0.8902).epsilon(1e-3));

    const DmoReport slow = dmo_test(RadialProfile::ex1_pos(0.75), 2);
    CHECK(slow.verdict.status == VerdictStatus::fails_analytic);
    CHECK(slow.partial_integral == doctest::Approx(2.6103).epsilon(1e-3));

    CHECK(dmo_test(RadialProfile::ex1_pos(1.0), 2).verdict.status ==
          VerdictStatus::fails_analytic);
    CHECK(dmo_test(RadialProfile::ex1_neg(1.5), 2).verdict.status ==
          VerdictStatus::holds_analytic);
    CHECK(dmo_test(RadialProfile::ex1_neg(0.75), 2).verdict.status ==
          VerdictStatus::fails_analytic);
    CHECK(dmo_test(RadialProfile::ex2(2.0), 2).verdict.status == VerdictStatus::holds_analytic);
    CHECK(dmo_test(RadialProfile::ex2(0.75), 2).verdict.status ==
          VerdictStatus::fails_analytic);

    const DmoReport osc = dmo_test(RadialProfile::ex3(10.0, 2), 2);
    CHECK(osc.verdict.status == VerdictStatus::fails_analytic);
    CHECK(osc.partial_integral == doctest::Approx(1.79774175977).epsilon(1e-9));

    // The explicit-curve overload with the default grid gives the same report.
    const RadialProfile p = RadialProfile::ex1_pos(1.5);
    const OscillationCurve curve = oscillation_curve(p, 2, default_curve_grid(p, 2));
    const DmoReport direct = dmo_test(p, 2, curve);
    CHECK(direct.partial_integral == fast.partial_integral);
    CHECK(direct.verdict.status == fast.verdict.status);
}

TEST_CASE("oscillating ball means deviate from the first-order form at the stated rate") {
    const double res10 = gslab::ex2_identity_residual(1.0, 2, 10.0);
    CHECK(res10 == doctest::Approx(-3.6895571e-3).epsilon(1e-5));

    // The remainder decays like t^{-beta-1} and no faster: scaled by t^{beta+1}
    // it stays O(1). The oscillatory factor can dip near zero at unlucky t, so
    // only the verified points also carry a lower bound.
    for (double beta : {0.5, 1.0, 2.0}) {
        for (double t : {10.0, 30.0}) {
            const double res = gslab::ex2_identity_residual(beta, 2, t);
            CHECK(std::abs(res) * std::pow(t, beta + 1.0) < 10.0);
        }
    }
    CHECK(std::abs(res10) * 100.0 > 0.05);
}
