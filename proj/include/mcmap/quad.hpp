#pragma once

// Deterministic adaptive integration of CDF-like functions over [0,1]:
// Gauss-Kronrod 7-15 panels refined by bisection of the worst panel.

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <vector>

#include "mcmap/errors.hpp"

namespace mcmap {

template <class D>
concept cdf_family = requires(const D& d, double x) {
    { d.cdf(x) } -> std::convertible_to<double>;
};

struct QuadResult {
    double value;
    double abs_error_estimate;
    int subdivisions;
};

namespace detail {

// QUADPACK dqk15 abscissae/weights. gk_nodes[1,3,5,7] are the embedded
// 7-point Gauss nodes.
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> gk_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
    double lo, hi;
    std::array<double, N> value;
    std::array<double, N> err;
    double worst;  // max over components of err
};

// One K15/G7 evaluation on [lo,hi]. Nodes are strictly interior, so the
// integrand is never sampled at the panel endpoints.
template <std::size_t N, class F>
Panel<N> gk15_panel(F&& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);
    std::array<double, N> k{}, g{};
    const std::array<double, N> fc = f(mid);
    for (std::size_t i = 0; i < N; ++i) {
        k[i] = gk_weights[7] * fc[i];
        g[i] = gauss_weights[3] * fc[i];
    }
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk_nodes[j];
        const std::array<double, N> f1 = f(mid - dx);
        const std::array<double, N> f2 = f(mid + dx);
        for (std::size_t i = 0; i < N; ++i) {
            const double s = f1[i] + f2[i];
            k[i] += gk_weights[j] * s;
            if (j % 2 == 1) g[i] += gauss_weights[j / 2] * s;
        }
    }
    Panel<N> p{lo, hi, {}, {}, 0.0};
    for (std::size_t i = 0; i < N; ++i) {
        p.value[i] = half * k[i];
        p.err[i] = std::fabs(half * (k[i] - g[i]));
        if (p.err[i] > p.worst) p.worst = p.err[i];
    }
    return p;
}

template <std::size_t N>
struct AdaptiveResult {
    std::array<double, N> value;
    std::array<double, N> err;
    int subdivisions;
    bool converged;
};

// Global adaptive scheme: repeatedly bisect the panel with the largest
// component error until every component's total estimate is under tol.
// Deterministic: ties resolve to the lowest panel index.
template <std::size_t N, class F>
AdaptiveResult<N> adaptive_gk(F&& f, double tol, int max_subdivisions) {
    std::vector<Panel<N>> panels;
    panels.reserve(static_cast<std::size_t>(max_subdivisions) + 1);
    panels.push_back(gk15_panel<N>(f, 0.0, 1.0));
    int splits = 0;
    for (;;) {
        std::array<double, N> total_err{};
        for (const auto& p : panels)
            for (std::size_t i = 0; i < N; ++i) total_err[i] += p.err[i];
        double worst_total = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            if (total_err[i] > worst_total) worst_total = total_err[i];

        if (worst_total <= tol || splits >= max_subdivisions) {
            AdaptiveResult<N> r{{}, total_err, splits, worst_total <= tol};
            for (const auto& p : panels)
                for (std::size_t i = 0; i < N; ++i) r.value[i] += p.value[i];
            return r;
        }

        std::size_t pick = 0;
        for (std::size_t j = 1; j < panels.size(); ++j)
            if (panels[j].worst > panels[pick].worst) pick = j;
        const double lo = panels[pick].lo, hi = panels[pick].hi;
        const double mid = 0.5 * (lo + hi);
        panels[pick] = gk15_panel<N>(f, lo, mid);
        panels.push_back(gk15_panel<N>(f, mid, hi));
        ++splits;
    }
}

}  // namespace detail

inline constexpr double default_quad_tol = 1e-10;
inline constexpr int default_quad_max_subdivisions = 200;

// ∫₀¹ f(x) dx to absolute tolerance tol. Throws no_convergence_error when the
// subdivision budget runs out first.
template <class F>
QuadResult integrate01(F&& f, double tol = default_quad_tol,
                       int max_subdivisions = default_quad_max_subdivisions) {
    if (!(tol > 0.0)) throw std::domain_error("integrate01: tol must be positive");
    auto r = detail::adaptive_gk<1>(
        [&f](double x) { return std::array<double, 1>{f(x)}; }, tol, max_subdivisions);
    if (!r.converged)
        throw no_convergence_error(
            "integrate01: subdivision limit reached before tolerance");
    return {r.value[0], r.err[0], r.subdivisions};
}

struct CdfMoments {
    double i1;  // ∫₀¹ F
    double i2;  // ∫₀¹ F²
};

// Both CDF moment integrals in one pass over shared panels.
template <cdf_family D>
CdfMoments cdf_moments(const D& d, double tol = default_quad_tol,
                       int max_subdivisions = default_quad_max_subdivisions) {
    if (!(tol > 0.0)) throw std::domain_error("cdf_moments: tol must be positive");
    auto r = detail::adaptive_gk<2>(
        [&d](double x) {
            const double F = d.cdf(x);
            return std::array<double, 2>{F, F * F};
        },
        tol, max_subdivisions);
    if (!r.converged)
        throw no_convergence_error(
            "cdf_moments: subdivision limit reached before tolerance");
    return {r.value[0], r.value[1]};
}

}  // namespace mcmap
