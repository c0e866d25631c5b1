#pragma once

// The bidirectional map between {mean, c-statistic} and family parameters.
// Forward direction rests on the two CDF integral identities
//     ∫₀¹ F = 1 − m    and    ∫₀¹ F² = 1 − 2cm + (2c−1)m²;
// the inverse direction solves them per family: beta and probit-normal
// reduce to one-dimensional root-finding (the mean pins one parameter),
// logit-normal and the generic mapper minimize the squared residuals.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "mcmap/dists.hpp"
#include "mcmap/quad.hpp"
#include "mcmap/solve.hpp"

namespace mcmap {

struct MeanCstat {
    double m;  // population mean risk
    double c;  // c-statistic
};

// Degenerate endpoints are excluded: c = 0.5 means no variability in risks,
// c = 1 complete separation. Values below 0.5 are rejected rather than
// label-flipped.
inline void validate(const MeanCstat& mc) {
    if (!(mc.m > 0.0 && mc.m < 1.0))
        throw std::domain_error("mean must lie strictly in (0,1)");
    if (!(mc.c > 0.5))
        throw std::domain_error(
            "c-statistic must exceed 0.5; if your model's c is below 0.5, flip the "
            "case/control labels and use 1 - c");
    if (!(mc.c < 1.0))
        throw std::domain_error("c-statistic must be strictly below 1");
}

struct TargetIntegrals {
    double i1;  // 1 − m
    double i2;  // 1 − 2cm + (2c−1)m²
};

inline TargetIntegrals target_integrals(const MeanCstat& mc) {
    validate(mc);
    return {1.0 - mc.m, 1.0 - 2.0 * mc.c * mc.m + (2.0 * mc.c - 1.0) * mc.m * mc.m};
}

// Forward map: m = 1 − ∫F, c = (1 − ∫F² − m²) / (2m(1−m)). This is the
// oracle every inverse solve is checked against.
template <cdf_family D>
MeanCstat mc_of(const D& d, double quad_tol = default_quad_tol) {
    const CdfMoments mom = cdf_moments(d, quad_tol);
    const double m = 1.0 - mom.i1;
    const double denom = m * (1.0 - m);
    if (denom < 1e-12)
        throw std::domain_error("mc_of: distribution is degenerate (mean at 0 or 1)");
    return {m, (1.0 - mom.i2 - m * m) / (2.0 * denom)};
}

struct SolveOptions {
    double quad_tol = default_quad_tol;
    int quad_max_subdivisions = default_quad_max_subdivisions;
    double root_tol = 1e-10;     // residual tolerance for the root-finding paths
    int root_max_iter = 200;
    double nm_tol = 1e-12;       // simplex spread tolerance for the 2-D path
    int nm_max_iter = 500;
    double residual_tol = 1e-8;  // convergence gate on the (I1, I2) residuals
};

template <class Params>
struct SolveReport {
    Params params;
    double residual_i1;
    double residual_i2;
    int iterations;
    bool converged;  // implies max(|residual_i1|, |residual_i2|) <= residual_tol
    std::string warning;
};

namespace detail {

inline std::string extreme_c_warning(const MeanCstat& mc) {
    if (mc.c > 0.99 || mc.c < 0.51)
        return "c-statistic is extreme; the CDF is nearly flat over much of [0,1] and "
               "the recovered parameters are best-effort";
    return {};
}

inline void append_warning(std::string& dst, const std::string& extra) {
    if (extra.empty()) return;
    if (!dst.empty()) dst += "; ";
    dst += extra;
}

template <class Params, class MakeDist>
SolveReport<Params> finish_report(Params params, const TargetIntegrals& tgt,
                                  const MakeDist& make, int iterations, bool solver_ok,
                                  std::string warning, const SolveOptions& opt) {
    SolveReport<Params> rep{params, std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), iterations, false,
                            std::move(warning)};
    try {
        const CdfMoments mom = cdf_moments(make(params), opt.quad_tol, opt.quad_max_subdivisions);
        rep.residual_i1 = mom.i1 - tgt.i1;
        rep.residual_i2 = mom.i2 - tgt.i2;
        rep.converged = solver_ok &&
                        std::fabs(rep.residual_i1) <= opt.residual_tol &&
                        std::fabs(rep.residual_i2) <= opt.residual_tol;
    } catch (const no_convergence_error& e) {
        append_warning(rep.warning, e.what());
    }
    return rep;
}

}  // namespace detail

// Beta: m = α/(α+β) pins β = α(1−m)/m exactly, leaving a one-dimensional
// root-find for α on the ∫F² equation. ∫F² grows monotonically in α (more
// concentration, smaller c), so a sign-checked bracket suffices.
inline SolveReport<BetaParams> mcmap_beta(const MeanCstat& mc, const SolveOptions& opt = {}) {
    const TargetIntegrals tgt = target_integrals(mc);
    std::string warning = detail::extreme_c_warning(mc);
    const double ratio = (1.0 - mc.m) / mc.m;
    auto make = [ratio](double alpha) { return BetaDist(alpha, alpha * ratio); };

    try {
        auto h = [&](double alpha) {
            const double i2 =
                cdf_moments(make(alpha), opt.quad_tol, opt.quad_max_subdivisions).i2;
            return i2 - tgt.i2;
        };
        double lo = 1e-4, hi = 1e4;
        double h_lo = h(lo), h_hi = h(hi);
        if (h_lo > 0.0) h_lo = h(lo *= 0.1);
        if (h_hi < 0.0) h_hi = h(hi *= 10.0);
        if (!(h_lo <= 0.0 && h_hi >= 0.0)) {
            detail::append_warning(warning,
                                   "failed to bracket alpha in [1e-5, 1e5]");
            return {BetaParams{std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN()},
                    std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(),
                    0,
                    false,
                    warning};
        }
        const RootResult root = brent_root(h, lo, hi, {opt.root_tol, opt.root_max_iter});
        const BetaParams params{root.root, root.root * ratio};
        return detail::finish_report(
            params, tgt, [&](const BetaParams& p) { return BetaDist(p); }, root.iterations,
            root.converged, std::move(warning), opt);
    } catch (const no_convergence_error& e) {
        detail::append_warning(warning, e.what());
        return {BetaParams{std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::quiet_NaN()},
                std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN(),
                0,
                false,
                warning};
    }
}

// Probit-normal: Φ(μ/√(1+σ²)) = m pins μ = Φ⁻¹(m)·√(1+σ²), leaving a
// one-dimensional root-find for σ. ∫F² falls monotonically in σ.
inline SolveReport<ProbitNormalParams> mcmap_probitnorm(const MeanCstat& mc,
                                                        const SolveOptions& opt = {}) {
    const TargetIntegrals tgt = target_integrals(mc);
    std::string warning = detail::extreme_c_warning(mc);
    const double zm = std_normal_quantile(mc.m);
    auto make = [zm](double sigma) {
        return ProbitNormalDist(zm * std::sqrt(1.0 + sigma * sigma), sigma);
    };

    try {
        auto h = [&](double sigma) {
            const double i2 =
                cdf_moments(make(sigma), opt.quad_tol, opt.quad_max_subdivisions).i2;
            return i2 - tgt.i2;
        };
        double lo = 1e-4, hi = 100.0;
        double h_lo = h(lo), h_hi = h(hi);
        if (h_lo < 0.0) h_lo = h(lo *= 0.1);
        if (h_hi > 0.0) h_hi = h(hi *= 10.0);
        if (!(h_lo >= 0.0 && h_hi <= 0.0)) {
            detail::append_warning(warning, "failed to bracket sigma in [1e-5, 1000]");
            return {ProbitNormalParams{std::numeric_limits<double>::quiet_NaN(),
                                       std::numeric_limits<double>::quiet_NaN()},
                    std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(),
                    0,
                    false,
                    warning};
        }
        const RootResult root = brent_root(h, lo, hi, {opt.root_tol, opt.root_max_iter});
        const double sigma = root.root;
        const ProbitNormalParams params{zm * std::sqrt(1.0 + sigma * sigma), sigma};
        return detail::finish_report(
            params, tgt, [](const ProbitNormalParams& p) { return ProbitNormalDist(p); },
            root.iterations, root.converged, std::move(warning), opt);
    } catch (const no_convergence_error& e) {
        detail::append_warning(warning, e.what());
        return {ProbitNormalParams{std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::quiet_NaN()},
                std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN(),
                0,
                false,
                warning};
    }
}

// Logit-normal: neither moment is analytic, so minimize the squared
// residuals over (μ, log σ); the log transform keeps the search
// unconstrained. Start at the median-matching point μ₀ = logit(m), σ₀ = 1.
inline SolveReport<LogitNormalParams> mcmap_logitnorm(const MeanCstat& mc,
                                                      const SolveOptions& opt = {}) {
    const TargetIntegrals tgt = target_integrals(mc);
    std::string warning = detail::extreme_c_warning(mc);

    auto residuals = [&](double mu, double log_sigma) -> std::pair<double, double> {
        const CdfMoments mom = cdf_moments(LogitNormalDist(mu, std::exp(log_sigma)),
                                           opt.quad_tol, opt.quad_max_subdivisions);
        return {mom.i1 - tgt.i1, mom.i2 - tgt.i2};
    };
    auto objective = [&](double mu, double log_sigma) {
        try {
            const auto [r1, r2] = residuals(mu, log_sigma);
            return r1 * r1 + r2 * r2;
        } catch (const no_convergence_error&) {
            return 1e6;  // treat an unintegrable excursion as a penalty
        }
    };

    const MinResult min =
        minimize2(objective, {logit(mc.m), 0.0}, {opt.nm_tol, opt.nm_max_iter});
    const LogitNormalParams params{min.argmin.first, std::exp(min.argmin.second)};
    return detail::finish_report(
        params, tgt, [](const LogitNormalParams& p) { return LogitNormalDist(p); },
        min.iterations, min.converged, std::move(warning), opt);
}

struct GenericOptions : SolveOptions {
    // Optional reparameterization hooks: the optimizer walks the transformed
    // space, the factory always sees raw parameters.
    std::function<std::pair<double, double>(std::pair<double, double>)> to_opt;
    std::function<std::pair<double, double>(std::pair<double, double>)> from_opt;
};

struct GenericParams {
    double p1;
    double p2;
};

// General two-parameter mapper: minimize the quadratic error in (I1, I2)
// over the family returned by `factory`. The factory returns nullopt for
// inadmissible parameters, which costs a flat penalty of 1e6 instead of
// failing the solve.
template <class Factory>
auto mcmap_generic(Factory&& factory, const MeanCstat& mc, std::pair<double, double> start,
                   const GenericOptions& opt = {})
    -> SolveReport<GenericParams> {
    const TargetIntegrals tgt = target_integrals(mc);
    std::string warning = detail::extreme_c_warning(mc);
    auto from_opt = opt.from_opt ? opt.from_opt
                                 : [](std::pair<double, double> t) { return t; };
    auto to_opt = opt.to_opt ? opt.to_opt : [](std::pair<double, double> t) { return t; };

    auto objective = [&](double t1, double t2) {
        const auto [p1, p2] = from_opt({t1, t2});
        const auto d = factory(p1, p2);
        if (!d) return 1e6;
        try {
            const CdfMoments mom = cdf_moments(*d, opt.quad_tol, opt.quad_max_subdivisions);
            const double r1 = mom.i1 - tgt.i1, r2 = mom.i2 - tgt.i2;
            return r1 * r1 + r2 * r2;
        } catch (const no_convergence_error&) {
            return 1e6;
        }
    };

    const MinResult min = minimize2(objective, to_opt(start), {opt.nm_tol, opt.nm_max_iter});
    const auto [p1, p2] = from_opt({min.argmin.first, min.argmin.second});
    SolveReport<GenericParams> rep{GenericParams{p1, p2},
                                   std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::quiet_NaN(),
                                   min.iterations,
                                   false,
                                   std::move(warning)};
    const auto d = factory(p1, p2);
    if (!d) {
        detail::append_warning(rep.warning, "optimizer settled on inadmissible parameters");
        return rep;
    }
    try {
        const CdfMoments mom = cdf_moments(*d, opt.quad_tol, opt.quad_max_subdivisions);
        rep.residual_i1 = mom.i1 - tgt.i1;
        rep.residual_i2 = mom.i2 - tgt.i2;
        rep.converged = min.converged && std::fabs(rep.residual_i1) <= opt.residual_tol &&
                        std::fabs(rep.residual_i2) <= opt.residual_tol;
    } catch (const no_convergence_error& e) {
        detail::append_warning(rep.warning, e.what());
    }
    return rep;
}

// Solutions for {m, c} and {1−m, c} are mirror images: the beta swaps its
// shapes, the normal families negate μ.
inline BetaParams mirror_solution(const BetaParams& p) { return {p.beta, p.alpha}; }
inline LogitNormalParams mirror_solution(const LogitNormalParams& p) {
    return {-p.mu, p.sigma};
}
inline ProbitNormalParams mirror_solution(const ProbitNormalParams& p) {
    return {-p.mu, p.sigma};
}

}  // namespace mcmap
