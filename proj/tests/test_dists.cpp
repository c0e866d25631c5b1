#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "mcmap/dists.hpp"
#include "mcmap/quad.hpp"

using Catch::Approx;

TEST_CASE("beta CDF matches closed forms") {
    CHECK(mcmap::BetaDist(1.0, 1.0).cdf(0.4) == Approx(0.4).margin(1e-13));
    CHECK(mcmap::BetaDist(2.0, 2.0).cdf(0.5) == Approx(0.5).margin(1e-13));
    for (double x : {0.25, 0.75}) {
        const double closed = 3 * x * x - 2 * x * x * x;
        CHECK(mcmap::BetaDist(2.0, 2.0).cdf(x) == Approx(closed).margin(1e-12));
    }
    CHECK_THROWS_AS(mcmap::BetaDist(-1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(mcmap::BetaDist(1.0, 0.0), std::domain_error);
}

TEST_CASE("logit-normal CDF puts its median at expit(mu)") {
    CHECK(mcmap::LogitNormalDist(0.0, 1.0).cdf(0.5) == Approx(0.5).margin(1e-14));
    CHECK(mcmap::LogitNormalDist(0.0, 3.7).cdf(0.5) == Approx(0.5).margin(1e-14));
    CHECK(mcmap::LogitNormalDist(1.0, 2.0).cdf(mcmap::expit(1.0)) ==
          Approx(0.5).margin(1e-12));
    CHECK(mcmap::LogitNormalDist(0.0, 1.0).cdf(0.0) == 0.0);
    CHECK(mcmap::LogitNormalDist(0.0, 1.0).cdf(1.0) == 1.0);
    CHECK_THROWS_AS(mcmap::LogitNormalDist(0.0, 0.0), std::domain_error);
}

TEST_CASE("probit-normal CDF special cases") {
    for (double x : {0.1, 0.5, 0.9})
        CHECK(mcmap::ProbitNormalDist(0.0, 1.0).cdf(x) == Approx(x).margin(1e-12));
    CHECK(mcmap::ProbitNormalDist(0.0, 2.0).cdf(0.5) == Approx(0.5).margin(1e-14));
    CHECK(mcmap::ProbitNormalDist(0.5, 1.0).cdf(mcmap::std_normal_cdf(0.5)) ==
          Approx(0.5).margin(1e-12));
    CHECK_THROWS_AS(mcmap::ProbitNormalDist(0.0, -1.0), std::domain_error);
}

TEST_CASE("triangular density and CDF") {
    const mcmap::Triangular sym(0.0, 1.0, 0.5);
    CHECK(sym.pdf(0.5) == Approx(2.0));
    CHECK(sym.cdf(0.5) == Approx(0.5));
    CHECK(mcmap::Triangular(0.0, 0.5, 0.2).cdf(0.5) == 1.0);
    CHECK(mcmap::Triangular(0.0, 0.5, 0.2).cdf(0.7) == 1.0);
    CHECK(sym.cdf(0.0) == 0.0);
    CHECK(sym.cdf(1.0) == 1.0);
    // modes may sit on a bound
    const mcmap::Triangular right(0.0, 1.0, 1.0);
    CHECK(right.pdf(1.0) == Approx(2.0));
    CHECK(right.cdf(0.5) == Approx(0.25));
    CHECK_THROWS_AS(mcmap::Triangular(0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(mcmap::Triangular(0.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("triangular quantile inverts the CDF") {
    const mcmap::Triangular t(0.1, 0.9, 0.3);
    for (double p : {0.05, 0.25, 0.5, 0.75, 0.95})
        CHECK(t.cdf(t.quantile(p)) == Approx(p).margin(1e-12));
}

TEST_CASE("triangular densities integrate to one") {
    for (auto t : {mcmap::Triangular(0.0, 1.0, 0.5), mcmap::Triangular(0.0, 1.0, 0.2),
                   mcmap::Triangular(0.2, 0.7, 0.7), mcmap::Triangular(0.0, 0.5, 0.1)}) {
        const auto r = mcmap::integrate01([&t](double x) { return t.pdf(x); });
        CHECK(r.value == Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("mixture CDF is the weighted combination of its parts") {
    const mcmap::TwoComponentMixture mx(mcmap::Triangular(0.0, 1.0, 0.5), 0.75,
                                        mcmap::Triangular(0.0, 1.0, 0.2));
    CHECK(mx.cdf(0.0) == 0.0);
    CHECK(mx.cdf(1.0) == 1.0);
    const double expected =
        0.75 * 0.5 + 0.25 * mcmap::Triangular(0.0, 1.0, 0.2).cdf(0.5);
    CHECK(mx.cdf(0.5) == Approx(expected).margin(1e-15));
    CHECK_THROWS_AS(mcmap::TwoComponentMixture(mcmap::Triangular(0.0, 1.0, 0.5), 1.0,
                                               mcmap::Triangular(0.0, 1.0, 0.2)),
                    std::domain_error);
}

TEST_CASE("every family CDF is a proper nondecreasing CDF on a dense grid") {
    auto check_cdf = [](const auto& d) {
        CHECK(d.cdf(0.0) == 0.0);
        CHECK(d.cdf(1.0) == 1.0);
        double prev = 0.0;
        for (int i = 1; i <= 10000; ++i) {
            const double v = d.cdf(i / 10000.0);
            REQUIRE(v >= prev);
            prev = v;
        }
    };
    check_cdf(mcmap::BetaDist(0.5, 2.5));
    check_cdf(mcmap::LogitNormalDist(-1.0, 1.5));
    check_cdf(mcmap::ProbitNormalDist(0.7, 0.4));
    check_cdf(mcmap::TwoComponentMixture(mcmap::Triangular(0.0, 0.5, 0.1), 0.5,
                                         mcmap::Triangular(0.5, 1.0, 0.6)));
}

TEST_CASE("beta mean ties the CDF area to alpha/(alpha+beta)") {
    for (auto [a, b] : {std::pair{1.0, 3.0}, {2.0, 2.0}, {0.5, 0.5}, {5.0, 1.5}}) {
        const mcmap::BetaDist d(a, b);
        const auto area = mcmap::integrate01([&d](double x) { return d.cdf(x); });
        CHECK(1.0 - area.value == Approx(a / (a + b)).margin(1e-9));
    }
}

TEST_CASE("mirroring reflects known families onto known families") {
    const auto beta_mirror = mcmap::mirror(mcmap::BetaDist(2.0, 5.0));
    const mcmap::BetaDist swapped(5.0, 2.0);
    const auto probit_mirror = mcmap::mirror(mcmap::ProbitNormalDist(0.8, 1.3));
    const mcmap::ProbitNormalDist negated(-0.8, 1.3);
    const auto uniform_mirror = mcmap::mirror(mcmap::BetaDist(1.0, 1.0));
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK(beta_mirror.cdf(x) == Approx(swapped.cdf(x)).margin(1e-12));
        CHECK(probit_mirror.cdf(x) == Approx(negated.cdf(x)).margin(1e-12));
        CHECK(uniform_mirror.cdf(x) == Approx(x).margin(1e-12));
    }
}

TEST_CASE("mirroring twice is the identity") {
    const mcmap::LogitNormalDist d(-0.6, 0.9);
    const auto twice = mcmap::mirror(mcmap::mirror(d));
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK(twice.cdf(x) == Approx(d.cdf(x)).margin(1e-12));
    }
}
