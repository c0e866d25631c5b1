#pragma once

// Triangular-mixture families showing that {mode, c} and {median, c} do not
// identify a distribution: each family member and its mirror share the
// central statistic and the c-statistic while being distinct distributions.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mcmap/dists.hpp"
#include "mcmap/mcmap.hpp"
#include "mcmap/solve.hpp"

namespace mcmap {

// 0.75·Tri(0,1,0.5) + 0.25·Tri(0,1,a); the mode sits at 0.5 for every a,
// and mirroring maps a → 1−a within the family.
inline TwoComponentMixture mode_family(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("mode_family: a must lie in (0,1)");
    return {Triangular(0.0, 1.0, 0.5), 0.75, Triangular(0.0, 1.0, a)};
}

// 0.5·Tri(0,0.5,a) + 0.5·Tri(0.5,1,0.5+a); every member has median 0.5, and
// mirroring maps a → 0.5−a within the family.
inline TwoComponentMixture median_family(double a) {
    if (!(a > 0.0 && a < 0.5))
        throw std::domain_error("median_family: a must lie in (0,0.5)");
    return {Triangular(0.0, 0.5, a), 0.5, Triangular(0.5, 1.0, 0.5 + a)};
}

struct ModeResult {
    double mode;
    double density;
    bool tie_warning;  // a second local maximum matches within 1e-9 in density
};

namespace detail {

// Golden-section maximization of f on [lo,hi] to ~1e-8 in the argument.
template <class F>
double golden_max(F&& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-8) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Argmax of the density: a 10⁴-point grid brackets the global peak (and any
// runner-up), golden-section polishes each.
template <class D>
ModeResult mode_of(const D& d) {
    constexpr int grid_n = 10000;
    std::vector<double> fx(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i)
        fx[static_cast<std::size_t>(i)] = d.pdf(static_cast<double>(i) / grid_n);

    int best = 0;
    for (int i = 1; i <= grid_n; ++i)
        if (fx[static_cast<std::size_t>(i)] > fx[static_cast<std::size_t>(best)]) best = i;

    auto polish = [&](int i) {
        const double lo = static_cast<double>(i > 0 ? i - 1 : 0) / grid_n;
        const double hi = static_cast<double>(i < grid_n ? i + 1 : grid_n) / grid_n;
        const double x = detail::golden_max([&d](double t) { return d.pdf(t); }, lo, hi);
        return std::pair<double, double>{x, d.pdf(x)};
    };
    const auto [mode, density] = polish(best);

    // runner-up: best grid local maximum at least a few cells away
    int second = -1;
    for (int i = 1; i < grid_n; ++i) {
        if (std::abs(i - best) <= 3) continue;
        const auto f = fx[static_cast<std::size_t>(i)];
        if (f < fx[static_cast<std::size_t>(i - 1)] || f < fx[static_cast<std::size_t>(i + 1)])
            continue;
        if (second < 0 || f > fx[static_cast<std::size_t>(second)]) second = i;
    }
    bool tie = false;
    if (second >= 0) {
        const auto [x2, f2] = polish(second);
        tie = std::fabs(x2 - mode) > 1e-6 && std::fabs(f2 - density) <= 1e-9;
    }
    return {mode, density, tie};
}

// Root of F(x) − 1/2 on [0,1].
template <class D>
double median_of(const D& d) {
    const auto r = brent_root([&d](double x) { return d.cdf(x) - 0.5; }, 0.0, 1.0,
                              {1e-10, 200});
    return r.root;
}

struct CounterexampleReport {
    double a;
    double a_mirror;
    double stat1, stat2;  // mode or median of the two family members
    double m1, m2;
    double c1, c2;
    double sup_cdf_distance;
    bool same_stat;
    bool same_c;
    bool distinct;
    bool verified() const { return same_stat && same_c && distinct; }
};

namespace detail {

template <class D1, class D2>
double sup_cdf_distance(const D1& d1, const D2& d2) {
    constexpr int grid_n = 4000;
    double sup = 0.0;
    for (int i = 0; i <= grid_n; ++i) {
        const double x = static_cast<double>(i) / grid_n;
        const double diff = std::fabs(d1.cdf(x) - d2.cdf(x));
        if (diff > sup) sup = diff;
    }
    return sup;
}

}  // namespace detail

// The pair (a, 1−a): same mode (0.5), same c, yet distinct CDFs.
inline CounterexampleReport verify_mode_counterexample(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("verify_mode_counterexample: a must lie in (0,1)");
    if (a == 0.5)
        throw std::domain_error(
            "verify_mode_counterexample: a = 0.5 mirrors onto itself (degenerate pair)");
    const auto d1 = mode_family(a);
    const auto d2 = mode_family(1.0 - a);
    const auto mode1 = mode_of(d1);
    const auto mode2 = mode_of(d2);
    const auto mc1 = mc_of(d1);
    const auto mc2 = mc_of(d2);
    CounterexampleReport rep{};
    rep.a = a;
    rep.a_mirror = 1.0 - a;
    rep.stat1 = mode1.mode;
    rep.stat2 = mode2.mode;
    rep.m1 = mc1.m;
    rep.m2 = mc2.m;
    rep.c1 = mc1.c;
    rep.c2 = mc2.c;
    rep.sup_cdf_distance = detail::sup_cdf_distance(d1, d2);
    rep.same_stat = std::fabs(rep.stat1 - rep.stat2) <= 1e-4 &&
                    std::fabs(rep.stat1 - 0.5) <= 1e-4 && std::fabs(rep.stat2 - 0.5) <= 1e-4;
    rep.same_c = std::fabs(rep.c1 - rep.c2) <= 1e-8;
    rep.distinct = rep.sup_cdf_distance >= 0.01;
    return rep;
}

// The pair (a, 0.5−a): same median (0.5), same c, yet distinct CDFs.
inline CounterexampleReport verify_median_counterexample(double a) {
    if (!(a > 0.0 && a < 0.5))
        throw std::domain_error("verify_median_counterexample: a must lie in (0,0.5)");
    if (a == 0.25)
        throw std::domain_error(
            "verify_median_counterexample: a = 0.25 mirrors onto itself (degenerate pair)");
    const auto d1 = median_family(a);
    const auto d2 = median_family(0.5 - a);
    const double med1 = median_of(d1);
    const double med2 = median_of(d2);
    const auto mc1 = mc_of(d1);
    const auto mc2 = mc_of(d2);
    CounterexampleReport rep{};
    rep.a = a;
    rep.a_mirror = 0.5 - a;
    rep.stat1 = med1;
    rep.stat2 = med2;
    rep.m1 = mc1.m;
    rep.m2 = mc2.m;
    rep.c1 = mc1.c;
    rep.c2 = mc2.c;
    rep.sup_cdf_distance = detail::sup_cdf_distance(d1, d2);
    rep.same_stat = std::fabs(rep.stat1 - 0.5) <= 1e-8 && std::fabs(rep.stat2 - 0.5) <= 1e-8;
    rep.same_c = std::fabs(rep.c1 - rep.c2) <= 1e-8;
    rep.distinct = rep.sup_cdf_distance >= 0.01;
    return rep;
}

}  // namespace mcmap
