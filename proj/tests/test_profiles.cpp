#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gslab/errors.hpp"
#include "gslab/profile.hpp"
#include "gslab/verdict.hpp"

using gslab::ex3_constants;
using gslab::Family;
using gslab::ModulusReport;
using gslab::RadialProfile;
using gslab::Verdict;
using gslab::VerdictStatus;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2 = RadialProfile::kLog2;
}

TEST_CASE("dimension-dependent constants of the oscillatory quotient family") {
    const auto c2 = ex3_constants(2);
    CHECK(c2.C1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c2.C2 == doctest::Approx(-1.5).epsilon(1e-15));

    const auto c3 = ex3_constants(3);
    CHECK(c3.C1 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(c3.C2 == doctest::Approx(-1.4).epsilon(1e-15));

    CHECK_THROWS_AS(ex3_constants(4), gslab::UnsupportedDimension);
    CHECK_THROWS_AS(RadialProfile::ex3(10.0, 1), gslab::UnsupportedDimension);
}

TEST_CASE("closed-form evaluation in the log variable") {
    const RadialProfile z = RadialProfile::zero();
    CHECK(z.g(5.0) == 0.0);
    CHECK(z.dg_dt(5.0) == 0.0);
    CHECK(z.ellipticity_margin() == 1.0);
    CHECK(z.sup_abs_g() == 0.0);

    const RadialProfile c = RadialProfile::constant(0.3);
    CHECK(c.g(1.0) == 0.3);
    CHECK(c.g(39.0) == 0.3);
    CHECK(c.ellipticity_margin() == doctest::Approx(1.3).epsilon(1e-15));

    const RadialProfile p1 = RadialProfile::ex1_pos(1.0);
    CHECK(p1.g(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p1.dg_dt(2.0) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(p1.g_of_r(std::exp(-2.0)) == doctest::Approx(0.5).epsilon(1e-14));

    const RadialProfile n1 = RadialProfile::ex1_neg(0.5);
    CHECK(n1.t_min() == 2.0);
    CHECK(n1.g(4.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(n1.dg_dt(4.0) == doctest::Approx(0.0625).epsilon(1e-15));

    const RadialProfile s = RadialProfile::ex2(1.0);
    CHECK(std::abs(s.g(std::numbers::pi)) < 1e-15);
    CHECK(s.g(0.5 * std::numbers::pi) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));

    const RadialProfile q = RadialProfile::ex3(10.0, 2);
    const double t = 2.0;
    const double want = (-0.5 * std::sin(t) + 1.5 * std::cos(t)) /
                        (10.0 + std::sin(t) - std::cos(t));
    CHECK(q.g(t) == doctest::Approx(want).epsilon(1e-15));
    CHECK(q.dim() == 2);
}

TEST_CASE("analytic slope matches a central difference for every family") {
    const std::vector<RadialProfile> profiles = {
        RadialProfile::constant(-0.4),  RadialProfile::ex1_pos(0.75),
        RadialProfile::ex1_neg(1.5),    RadialProfile::ex2(0.5),
        RadialProfile::ex3(10.0, 3),
        RadialProfile::table({{1.0, 0.2}, {20.0, -0.1}, {40.0, 0.4}}),
    };
    std::mt19937_64 rng(4242);
    const double h = 1e-6;
    for (const auto& p : profiles) {
        std::uniform_real_distribution<double> pick(p.t_min() + 2.0 * h, p.t_max() - 2.0 * h);
        for (int trial = 0; trial < 40; ++trial) {
            const double t = pick(rng);
            const double fd = (p.g(t + h) - p.g(t - h)) / (2.0 * h);
            CHECK(std::abs(fd - p.dg_dt(t)) < 1e-6 * (1.0 + std::abs(p.dg_dt(t))));
        }
    }
}

TEST_CASE("evaluation outside the window is rejected, with endpoint slack") {
    const RadialProfile p = RadialProfile::ex1_pos(1.0);
    CHECK_THROWS_AS(p.g(p.t_min() - 0.1), gslab::OutOfDomain);
    CHECK_THROWS_AS(p.g(p.t_max() + 0.1), gslab::OutOfDomain);
    CHECK_THROWS_AS(p.dg_dt(p.t_max() + 0.1), gslab::OutOfDomain);
    CHECK_THROWS_AS(p.g_of_r(0.0), gslab::OutOfDomain);
    CHECK_THROWS_AS(p.g_of_r(-1.0), gslab::OutOfDomain);
    // Round-off-sized excursions clamp instead of throwing.
    CHECK(p.g(p.t_min() - 1e-12) == p.g(p.t_min()));
    CHECK(p.g(p.t_max() + 1e-12) == p.g(p.t_max()));
}

TEST_CASE("construction enforces uniform ellipticity over the window") {
    CHECK_THROWS_AS(RadialProfile::constant(-0.9995), gslab::EllipticityViolation);
    CHECK_THROWS_AS(RadialProfile::constant(-1.5), gslab::EllipticityViolation);
    const RadialProfile ok = RadialProfile::constant(-0.99);
    CHECK(ok.ellipticity_margin() == doctest::Approx(0.01).epsilon(1e-12));

    // g = -t^{-gamma} dips to -1 at t = 1, so windows reaching t = 1 die.
    CHECK_THROWS_AS(RadialProfile::ex1_neg(1.0, 1.0, 40.0), gslab::EllipticityViolation);
    const RadialProfile neg = RadialProfile::ex1_neg(0.8);
    CHECK(neg.ellipticity_margin() ==
          doctest::Approx(1.0 - std::pow(2.0, -0.8)).epsilon(1e-12));

    CHECK_THROWS_AS(RadialProfile::table({{1.0, 0.0}, {30.0, -0.9999}, {40.0, 0.0}}),
                    gslab::EllipticityViolation);
}

TEST_CASE("window validation rejects inverted or nonpositive windows") {
    CHECK_THROWS_AS(RadialProfile::zero(5.0, 5.0), gslab::ConfigInvalid);
    CHECK_THROWS_AS(RadialProfile::zero(5.0, 2.0), gslab::ConfigInvalid);
    CHECK_THROWS_AS(RadialProfile::zero(-1.0, 10.0), gslab::ConfigInvalid);
}

TEST_CASE("sign of g near r = 0") {
    CHECK(RadialProfile::ex1_pos(1.0).positive_near_zero().status ==
          VerdictStatus::holds_analytic);
    CHECK(RadialProfile::ex1_pos(1.0).positive_near_zero().evidence ==
          doctest::Approx(0.025).epsilon(1e-15));
    CHECK(RadialProfile::ex1_neg(1.0).positive_near_zero().status ==
          VerdictStatus::fails_analytic);
    CHECK(RadialProfile::zero().positive_near_zero().status == VerdictStatus::fails_analytic);
    CHECK(RadialProfile::constant(0.2).positive_near_zero().status ==
          VerdictStatus::holds_analytic);
    CHECK(RadialProfile::constant(-0.2).positive_near_zero().status ==
          VerdictStatus::fails_analytic);
    CHECK(RadialProfile::ex2(1.0).positive_near_zero().status == VerdictStatus::fails_analytic);
    CHECK(RadialProfile::ex3(10.0, 2).positive_near_zero().status ==
          VerdictStatus::fails_analytic);

    const RadialProfile tail_pos = RadialProfile::table({{1.0, -0.3}, {20.0, 0.5}, {40.0, 0.5}});
    CHECK(tail_pos.positive_near_zero().status == VerdictStatus::holds_numeric_window);
    const RadialProfile tail_neg = RadialProfile::table({{1.0, 0.5}, {40.0, -0.1}});
    CHECK(tail_neg.positive_near_zero().status == VerdictStatus::fails_numeric_window);
}

TEST_CASE("piecewise-linear tables interpolate and bound their domain") {
    const RadialProfile p = RadialProfile::table({{1.0, 0.0}, {3.0, 1.0}, {5.0, 0.0}});
    CHECK(p.t_min() == 1.0);
    CHECK(p.t_max() == 5.0);
    CHECK(p.g(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.g(3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.g(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.dg_dt(2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.dg_dt(4.2) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK_THROWS_AS(p.g(0.5), gslab::OutOfDomain);
    CHECK_THROWS_AS(p.g(5.6), gslab::OutOfDomain);

    CHECK_THROWS_AS(RadialProfile::table({{1.0, 0.0}}), gslab::ConfigInvalid);
    CHECK_THROWS_AS(RadialProfile::table({{3.0, 0.0}, {2.0, 0.1}}), gslab::ConfigInvalid);
}

TEST_CASE("tables round-trip through CSV files") {
    const std::string path = "profile_table_test.csv";
    {
        std::ofstream out(path);
        out << "# t, g\n";
        out << "1.0, 0.25\n";
        out << "10.0  -0.125\n";
        out << "40.0, 0.5\n";
    }
    const RadialProfile p = RadialProfile::table_from_csv(path);
    std::remove(path.c_str());
    REQUIRE(p.samples().size() == 3);
    CHECK(p.t_min() == 1.0);
    CHECK(p.t_max() == 40.0);
    CHECK(p.g(10.0) == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(p.g(25.0) == doctest::Approx(-0.125 + 0.625 * 15.0 / 30.0).epsilon(1e-14));

    CHECK_THROWS_AS(RadialProfile::table_from_csv("no_such_file.csv"), gslab::ConfigInvalid);
}

TEST_CASE("integral criteria for power-law profiles use closed-form tails") {
    const RadialProfile p2 = RadialProfile::ex1_pos(2.0);
    const Verdict d_inf = dini_test(p2, kInf);
    CHECK(d_inf.status == VerdictStatus::holds_analytic);
    CHECK(d_inf.evidence == doctest::Approx(1.4426950408889634).epsilon(1e-14));
    const Verdict d_40 = dini_test(p2, 40.0);
    CHECK(d_40.evidence == doctest::Approx(1.4176950408889634).epsilon(1e-14));

    const RadialProfile p1 = RadialProfile::ex1_pos(1.0);
    const Verdict d1 = dini_test(p1, kInf);
    CHECK(d1.status == VerdictStatus::fails_analytic);
    CHECK(d1.evidence == doctest::Approx(std::log(40.0 / kLog2)).epsilon(1e-13));
    const Verdict s1 = square_dini_test(p1, kInf);
    CHECK(s1.status == VerdictStatus::holds_analytic);
    CHECK(s1.evidence == doctest::Approx(1.4426950408889634).epsilon(1e-14));
    const Verdict tv1 = total_variation_test(p1, 40.0);
    CHECK(tv1.status == VerdictStatus::holds_analytic);
    CHECK(tv1.evidence == doctest::Approx(1.4176950408889634).epsilon(1e-14));
    const Verdict tv_inf = total_variation_test(p1, kInf);
    CHECK(tv_inf.evidence == doctest::Approx(1.4426950408889634).epsilon(1e-14));
    const Verdict rg = rgprime_bounded_test(p1);
    CHECK(rg.status == VerdictStatus::holds_analytic);
    CHECK(rg.evidence == doctest::Approx(std::pow(kLog2, -2.0)).epsilon(1e-13));

    const RadialProfile n06 = RadialProfile::ex1_neg(0.6);
    CHECK(dini_test(n06, 40.0).status == VerdictStatus::fails_analytic);
    CHECK(dini_test(n06, 40.0).evidence ==
          doctest::Approx((std::pow(40.0, 0.4) - std::pow(2.0, 0.4)) / 0.4).epsilon(1e-13));
    const Verdict sq06 = square_dini_test(n06, kInf);
    CHECK(sq06.status == VerdictStatus::holds_analytic);
    CHECK(sq06.evidence == doctest::Approx(std::pow(2.0, -0.2) / 0.2).epsilon(1e-13));
}

TEST_CASE("integral criteria for the oscillating families") {
    CHECK(dini_test(RadialProfile::ex2(2.0), kInf).status == VerdictStatus::holds_analytic);
    CHECK(dini_test(RadialProfile::ex2(1.0), kInf).status == VerdictStatus::fails_analytic);
    CHECK(dini_test(RadialProfile::ex2(0.75), kInf).status == VerdictStatus::fails_analytic);
    CHECK(square_dini_test(RadialProfile::ex2(0.75), kInf).status ==
          VerdictStatus::holds_analytic);
    CHECK(total_variation_test(RadialProfile::ex2(0.75), kInf).status ==
          VerdictStatus::fails_analytic);
    CHECK(rgprime_bounded_test(RadialProfile::ex2(0.75)).status ==
          VerdictStatus::holds_analytic);

    const RadialProfile q = RadialProfile::ex3(10.0, 2);
    const ModulusReport mq = modulus_report(q, kInf);
    CHECK(mq.dini.status == VerdictStatus::fails_analytic);
    CHECK(mq.square_dini.status == VerdictStatus::fails_analytic);
    CHECK(mq.total_variation.status == VerdictStatus::fails_analytic);
    CHECK(mq.rgprime_bounded.status == VerdictStatus::holds_analytic);
    // Partial integrals of |g| grow linearly with the window.
    const double ev15 = dini_test(q, 15.0).evidence;
    const double ev30 = dini_test(q, 30.0).evidence;
    CHECK(ev30 / ev15 > 1.8);
    CHECK(ev30 / ev15 < 2.3);

    const RadialProfile c = RadialProfile::constant(0.25);
    CHECK(dini_test(c, 40.0).status == VerdictStatus::fails_analytic);
    CHECK(dini_test(c, 40.0).evidence ==
          doctest::Approx(0.25 * (40.0 - kLog2)).epsilon(1e-14));
    CHECK(total_variation_test(c, 40.0).status == VerdictStatus::holds_analytic);
    CHECK(dini_test(RadialProfile::constant(0.0), 40.0).status ==
          VerdictStatus::holds_analytic);

    const ModulusReport mz = modulus_report(RadialProfile::zero(), kInf);
    CHECK(mz.dini.status == VerdictStatus::holds_analytic);
    CHECK(mz.square_dini.status == VerdictStatus::holds_analytic);
    CHECK(mz.total_variation.status == VerdictStatus::holds_analytic);
    CHECK(mz.rgprime_bounded.status == VerdictStatus::holds_analytic);
}

TEST_CASE("table profiles only ever get windowed verdicts") {
    // Compact support: prefix integrals settle, so the window test certifies.
    const RadialProfile settled = RadialProfile::table({{1.0, 1.0}, {5.0, 0.0}, {40.0, 0.0}});
    const Verdict d = dini_test(settled, kInf);
    CHECK(d.status == VerdictStatus::holds_numeric_window);
    CHECK(d.evidence == doctest::Approx(2.0).epsilon(1e-6));
    const Verdict sq = square_dini_test(settled, kInf);
    CHECK(sq.status == VerdictStatus::holds_numeric_window);
    CHECK(sq.evidence == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    const Verdict tv = total_variation_test(settled, kInf);
    CHECK(tv.status == VerdictStatus::holds_numeric_window);
    CHECK(tv.evidence == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rgprime_bounded_test(settled).status == VerdictStatus::holds_numeric_window);
    CHECK(rgprime_bounded_test(settled).evidence == doctest::Approx(0.25).epsilon(1e-9));

    // A fat constant stays divergent-looking: the prefix keeps accelerating.
    const RadialProfile fat = RadialProfile::table({{1.0, 2000.0}, {40.0, 2000.0}});
    CHECK(dini_test(fat, kInf).status == VerdictStatus::fails_numeric_window);
    CHECK(square_dini_test(fat, kInf).status == VerdictStatus::fails_numeric_window);
    CHECK(total_variation_test(fat, kInf).status == VerdictStatus::holds_numeric_window);

    // A modest constant neither settles nor blows up inside the window.
    const RadialProfile mid = RadialProfile::table({{1.0, 1.0}, {40.0, 1.0}});
    CHECK(dini_test(mid, kInf).status == VerdictStatus::inconclusive);
}
