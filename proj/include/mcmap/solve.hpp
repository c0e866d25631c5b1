#pragma once

// Scalar root bracketing (Brent) and two-variable derivative-free
// minimization (Nelder-Mead with standard coefficients).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace mcmap {

struct RootResult {
    double root;
    double residual;
    int iterations;
    bool converged;  // |residual| <= tol
};

struct RootOptions {
    double tol = 1e-10;  // residual tolerance
    int max_iter = 200;
};

// Brent (1973): inverse quadratic interpolation guarded by bisection.
// Requires a sign change on [lo,hi]; the iterate never leaves the bracket.
template <class F>
RootResult brent_root(F&& f, double lo, double hi, RootOptions opt = {}) {
    if (!(lo < hi)) throw std::invalid_argument("brent_root: requires lo < hi");
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0.0, 0, true};
    if (fb == 0.0) return {b, 0.0, 0, true};
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent_root: f(lo) and f(hi) must have opposite signs");

    const double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa;
    double d = b - a, e = d;
    int iter = 0;
    for (; iter < opt.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 1e-15;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || std::fabs(fb) <= opt.tol) break;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return {b, fb, iter, std::fabs(fb) <= opt.tol};
}

struct MinResult {
    std::pair<double, double> argmin;
    double objective_value;
    int iterations;
    bool converged;
};

struct MinOptions {
    double tol = 1e-12;  // relative spread of simplex objective values
    int max_iter = 500;
};

// Nelder-Mead on R²: reflect 1, expand 2, contract 0.5, shrink 0.5. Initial
// simplex steps are 10% of each start coordinate with a floor of 0.1.
template <class F>
MinResult minimize2(F&& f, std::pair<double, double> start, MinOptions opt = {}) {
    using vec2 = std::array<double, 2>;
    auto eval = [&f](const vec2& v) { return f(v[0], v[1]); };

    std::array<vec2, 3> x;
    x[0] = {start.first, start.second};
    for (int k = 0; k < 2; ++k) {
        vec2 v = x[0];
        double step = 0.1 * std::fabs(v[k]);
        if (step < 0.1) step = 0.1;
        v[k] += step;
        x[k + 1] = v;
    }
    std::array<double, 3> fx{eval(x[0]), eval(x[1]), eval(x[2])};
    if (!std::isfinite(fx[0]))
        throw std::invalid_argument("minimize2: objective not finite at start");

    auto order = [&] {
        if (fx[0] > fx[1]) {
            std::swap(fx[0], fx[1]);
            std::swap(x[0], x[1]);
        }
        if (fx[1] > fx[2]) {
            std::swap(fx[1], fx[2]);
            std::swap(x[1], x[2]);
        }
        if (fx[0] > fx[1]) {
            std::swap(fx[0], fx[1]);
            std::swap(x[0], x[1]);
        }
    };

    int iter = 0;
    bool converged = false;
    for (; iter < opt.max_iter; ++iter) {
        order();
        const double spread = fx[2] - fx[0];
        const double diam = std::max(
            std::max(std::fabs(x[1][0] - x[0][0]), std::fabs(x[2][0] - x[0][0])),
            std::max(std::fabs(x[1][1] - x[0][1]), std::fabs(x[2][1] - x[0][1])));
        const double xscale = 1.0 + std::max(std::fabs(x[0][0]), std::fabs(x[0][1]));
        if (spread <= opt.tol * (std::fabs(fx[0]) + opt.tol) || diam <= 1e-12 * xscale) {
            converged = true;
            break;
        }

        const vec2 centroid{0.5 * (x[0][0] + x[1][0]), 0.5 * (x[0][1] + x[1][1])};
        auto along = [&](double t) {
            return vec2{centroid[0] + t * (centroid[0] - x[2][0]),
                        centroid[1] + t * (centroid[1] - x[2][1])};
        };

        const vec2 xr = along(1.0);
        const double fr = eval(xr);
        if (fr < fx[0]) {
            const vec2 xe = along(2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                x[2] = xe;
                fx[2] = fe;
            } else {
                x[2] = xr;
                fx[2] = fr;
            }
            continue;
        }
        if (fr < fx[1]) {
            x[2] = xr;
            fx[2] = fr;
            continue;
        }
        if (fr < fx[2]) {  // outside contraction
            const vec2 xc = along(0.5);
            const double fc = eval(xc);
            if (fc <= fr) {
                x[2] = xc;
                fx[2] = fc;
                continue;
            }
        } else {  // inside contraction
            const vec2 xc = along(-0.5);
            const double fc = eval(xc);
            if (fc < fx[2]) {
                x[2] = xc;
                fx[2] = fc;
                continue;
            }
        }
        for (int k = 1; k < 3; ++k) {  // shrink toward the best vertex
            x[k] = {x[0][0] + 0.5 * (x[k][0] - x[0][0]), x[0][1] + 0.5 * (x[k][1] - x[0][1])};
            fx[k] = eval(x[k]);
        }
    }
    order();
    return {{x[0][0], x[0][1]}, fx[0], iter, converged};
}

}  // namespace mcmap
