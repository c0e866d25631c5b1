#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "mcmap/counterex.hpp"

using Catch::Approx;

TEST_CASE("mode search recovers a plain triangular mode") {
    const auto r = mcmap::mode_of(mcmap::Triangular(0.0, 1.0, 0.3));
    CHECK(r.mode == Approx(0.3).margin(1e-6));
    CHECK_FALSE(r.tie_warning);
}

TEST_CASE("mode family peaks at one half for every a") {
    for (double a : {0.2, 0.8, 0.35, 0.65}) {
        const auto r = mcmap::mode_of(mcmap::mode_family(a));
        CHECK(r.mode == Approx(0.5).margin(1e-6));
    }
}

TEST_CASE("mode search warns when two peaks tie") {
    const mcmap::TwoComponentMixture bimodal(mcmap::Triangular(0.0, 0.4, 0.2), 0.5,
                                             mcmap::Triangular(0.6, 1.0, 0.8));
    const auto r = mcmap::mode_of(bimodal);
    CHECK(r.tie_warning);
}

TEST_CASE("median search") {
    CHECK(mcmap::median_of(mcmap::BetaDist(1.0, 1.0)) == Approx(0.5).margin(1e-10));
    for (double a : {0.1, 0.4})
        CHECK(mcmap::median_of(mcmap::median_family(a)) == Approx(0.5).margin(1e-8));
}

TEST_CASE("mode counterexample pairs verify") {
    for (double a : {0.2, 0.4}) {
        const auto rep = mcmap::verify_mode_counterexample(a);
        CHECK(rep.same_stat);
        CHECK(rep.same_c);
        CHECK(rep.distinct);
        CHECK(rep.verified());
        CHECK(rep.a_mirror == Approx(1.0 - a));
    }
    CHECK_THROWS_AS(mcmap::verify_mode_counterexample(0.5), std::domain_error);
    CHECK_THROWS_AS(mcmap::verify_mode_counterexample(0.0), std::domain_error);
}

TEST_CASE("median counterexample pairs verify") {
    for (double a : {0.1, 0.2}) {
        const auto rep = mcmap::verify_median_counterexample(a);
        CHECK(rep.same_stat);
        CHECK(rep.same_c);
        CHECK(rep.distinct);
        CHECK(rep.verified());
        CHECK(rep.a_mirror == Approx(0.5 - a));
    }
    CHECK_THROWS_AS(mcmap::verify_median_counterexample(0.25), std::domain_error);
    CHECK_THROWS_AS(mcmap::verify_median_counterexample(0.6), std::domain_error);
}

TEST_CASE("mirroring a mixture keeps c and reflects the mean") {
    for (const auto& d : {mcmap::mode_family(0.3), mcmap::median_family(0.15)}) {
        const auto mc = mcmap::mc_of(d);
        const auto mirrored = mcmap::mc_of(mcmap::mirror(d));
        CHECK(std::fabs(mirrored.c - mc.c) <= 1e-8);
        CHECK(std::fabs(mirrored.m - (1.0 - mc.m)) <= 1e-8);
    }
}

TEST_CASE("mixture CDFs are strictly increasing inside the unit interval") {
    for (const auto& d : {mcmap::mode_family(0.25), mcmap::median_family(0.1)}) {
        double prev = d.cdf(0.001);
        for (int i = 2; i < 1000; ++i) {
            const double v = d.cdf(i / 1000.0);
            REQUIRE(v > prev);
            prev = v;
        }
    }
}
