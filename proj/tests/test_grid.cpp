#include <doctest.h>

#include <random>

#include "gslab/errors.hpp"
#include "gslab/grid.hpp"

using gslab::TGrid;

TEST_CASE("both endpoints are hit exactly") {
    const TGrid g = TGrid::uniform(0.6931471805599453, 40.0, 1e-3);
    CHECK(g.at(0) == 0.6931471805599453);
    CHECK(g.at(g.count - 1) == 40.0);
    CHECK(g.step() <= 1e-3);
    CHECK(g.count == 39308);
}

TEST_CASE("a span that divides evenly keeps the requested step") {
    const TGrid g = TGrid::uniform(0.0, 1.0, 0.25);
    CHECK(g.count == 5);
    CHECK(g.step() == 0.25);

    // A span just past a multiple picks up one extra interval.
    const TGrid h = TGrid::uniform(0.0, 1.01, 0.25);
    CHECK(h.count == 6);
    CHECK(h.step() <= 0.25);
}

TEST_CASE("the step is shrunk, never grown, for random windows") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> lo(-5.0, 5.0);
    std::uniform_real_distribution<double> span(1e-3, 60.0);
    std::uniform_real_distribution<double> stepd(1e-4, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = lo(rng);
        const double b = a + span(rng);
        const double s = stepd(rng);
        const TGrid g = TGrid::uniform(a, b, s);
        CHECK(g.count >= 2);
        CHECK(g.at(0) == a);
        CHECK(g.at(g.count - 1) == b);
        CHECK(g.step() <= s * (1.0 + 1e-9));
        for (std::size_t i = 1; i < g.count; ++i) CHECK(g.at(i) > g.at(i - 1));
    }
}

TEST_CASE("index_below brackets interior points and clamps outside") {
    const TGrid g = TGrid::uniform(2.0, 12.0, 0.5);
    REQUIRE(g.count == 21);
    CHECK(g.index_below(1.0) == 0);
    CHECK(g.index_below(2.0) == 0);
    CHECK(g.index_below(2.49) == 0);
    CHECK(g.index_below(2.5) == 1);
    CHECK(g.index_below(7.3) == 10);
    CHECK(g.index_below(12.0) == g.count - 1);
    CHECK(g.index_below(99.0) == g.count - 1);

    for (std::size_t i = 0; i + 1 < g.count; ++i) {
        const double mid = 0.5 * (g.at(i) + g.at(i + 1));
        CHECK(g.index_below(mid) == i);
    }
}

TEST_CASE("degenerate windows and steps are rejected") {
    CHECK_THROWS_AS(TGrid::uniform(1.0, 1.0, 0.1), gslab::ConfigInvalid);
    CHECK_THROWS_AS(TGrid::uniform(3.0, 1.0, 0.1), gslab::ConfigInvalid);
    CHECK_THROWS_AS(TGrid::uniform(0.0, 1.0, 0.0), gslab::ConfigInvalid);
    CHECK_THROWS_AS(TGrid::uniform(0.0, 1.0, -0.5), gslab::ConfigInvalid);
}
