#pragma once

// Monte-Carlo validation machinery: SE-targeted sample sizes, risk and
// outcome samplers, the Mann-Whitney c-statistic estimator, and the
// (family × m × c) grid runner.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "mcmap/format.hpp"
#include "mcmap/mcmap.hpp"
#include "mcmap/rng.hpp"

namespace mcmap {

enum class Family { beta, logitnorm, probitnorm };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::beta: return "beta";
        case Family::logitnorm: return "logitnorm";
        case Family::probitnorm: return "probitnorm";
    }
    return "?";
}

inline std::optional<Family> family_from_name(std::string_view name) {
    if (name == "beta") return Family::beta;
    if (name == "logitnorm") return Family::logitnorm;
    if (name == "probitnorm") return Family::probitnorm;
    return std::nullopt;
}

// Smallest n with sqrt(m(1-m)/n) <= se (binomial Wald SE of a proportion).
// The comparison carries a sliver of relative slack so exact-arithmetic
// boundaries like 0.09/0.001^2 land on the mathematical answer.
inline long long wald_n(double m, double se) {
    if (!(m > 0.0 && m < 1.0)) throw std::domain_error("wald_n: m must lie in (0,1)");
    if (!(se > 0.0)) throw std::domain_error("wald_n: se must be positive");
    const double v = m * (1.0 - m);
    const double se2 = se * se;
    auto small_enough = [v, se2](long long n) {
        return v / static_cast<double>(n) <= se2 * (1.0 + 1e-12);
    };
    long long n = static_cast<long long>(std::ceil(v / se2 * (1.0 - 1e-12)));
    if (n < 1) n = 1;
    while (n > 1 && small_enough(n - 1)) --n;
    while (!small_enough(n)) ++n;
    return n;
}

namespace detail {

// Hanley-McNeil-form variance of the empirical c-statistic with
// Q1 = c/(2-c), Q2 = 2c²/(1+c), n1 = round(m·n) cases, n0 = n - n1 controls.
inline double cstat_variance(double m, double c, long long n) {
    const long long n1 = std::llround(m * static_cast<double>(n));
    const long long n0 = n - n1;
    if (n1 < 1 || n0 < 1) return std::numeric_limits<double>::infinity();
    const double q1 = c / (2.0 - c);
    const double q2 = 2.0 * c * c / (1.0 + c);
    const double c2 = c * c;
    return (c * (1.0 - c) + static_cast<double>(n1 - 1) * (q1 - c2) +
            static_cast<double>(n0 - 1) * (q2 - c2)) /
           (static_cast<double>(n1) * static_cast<double>(n0));
}

}  // namespace detail

// Smallest n whose c-statistic variance is at or below se², located by
// integer bisection and settled to the exact boundary.
inline long long newcombe_n(double m, double c, double se) {
    validate(MeanCstat{m, c});
    if (!(se > 0.0)) throw std::domain_error("newcombe_n: se must be positive");
    const double se2 = se * se;
    long long hi = 2;
    while (detail::cstat_variance(m, c, hi) > se2) {
        hi *= 2;
        if (hi > (1LL << 42))
            throw no_convergence_error("newcombe_n: required sample size exceeds 2^42");
    }
    long long lo = 1;  // variance at n=1 is infinite, so the predicate is false there
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (detail::cstat_variance(m, c, mid) <= se2)
            hi = mid;
        else
            lo = mid;
    }
    while (hi > 2 && detail::cstat_variance(m, c, hi - 1) <= se2) --hi;
    return hi;
}

namespace detail {

inline double clamp_open_unit(double x) {
    constexpr double lo = std::numeric_limits<double>::min();
    const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return std::min(std::max(x, lo), hi);
}

}  // namespace detail

// n risks from the given family, deterministic in the seed. Values are kept
// strictly inside (0,1).
inline std::vector<double> sample_risks(Family family, double p1, double p2, long long n,
                                        std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample_risks: n must be at least 1");
    switch (family) {
        case Family::beta:
            if (!BetaParams{p1, p2}.valid())
                throw std::domain_error("sample_risks: invalid beta parameters");
            break;
        case Family::logitnorm:
            if (!LogitNormalParams{p1, p2}.valid())
                throw std::domain_error("sample_risks: invalid logit-normal parameters");
            break;
        case Family::probitnorm:
            if (!ProbitNormalParams{p1, p2}.valid())
                throw std::domain_error("sample_risks: invalid probit-normal parameters");
            break;
    }
    SplitMix64 rng(seed);
    std::vector<double> risks(static_cast<std::size_t>(n));
    switch (family) {
        case Family::beta:
            for (auto& r : risks) r = detail::clamp_open_unit(rng.beta(p1, p2));
            break;
        case Family::logitnorm:
            for (auto& r : risks) r = detail::clamp_open_unit(expit(p1 + p2 * rng.normal()));
            break;
        case Family::probitnorm:
            for (auto& r : risks)
                r = detail::clamp_open_unit(std_normal_cdf(p1 + p2 * rng.normal()));
            break;
    }
    return risks;
}

// Y_i ~ Bernoulli(risk_i), deterministic in the seed.
inline std::vector<int> simulate_outcomes(const std::vector<double>& risks,
                                          std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<int> y(risks.size());
    for (std::size_t i = 0; i < risks.size(); ++i) y[i] = rng.uniform() < risks[i] ? 1 : 0;
    return y;
}

// Mann-Whitney estimator of P(risk_case > risk_control) with ties counted
// half, via midranks in O(n log n).
inline double empirical_cstat(const std::vector<double>& risks,
                              const std::vector<int>& outcomes) {
    if (risks.size() != outcomes.size())
        throw std::invalid_argument("empirical_cstat: size mismatch");
    const std::size_t n = risks.size();
    std::size_t n1 = 0;
    for (int y : outcomes) n1 += static_cast<std::size_t>(y != 0);
    if (n1 == 0 || n1 == n)
        throw std::domain_error(
            "empirical_cstat: undefined without at least one case and one control");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&risks](std::size_t a, std::size_t b) { return risks[a] < risks[b]; });

    double rank_sum_cases = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && risks[idx[j + 1]] == risks[idx[i]]) ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k)
            if (outcomes[idx[k]] != 0) rank_sum_cases += midrank;
        i = j + 1;
    }
    const double dn1 = static_cast<double>(n1);
    const double dn0 = static_cast<double>(n - n1);
    return (rank_sum_cases - dn1 * (dn1 + 1.0) / 2.0) / (dn1 * dn0);
}

struct SimGrid {
    std::vector<Family> families{Family::beta, Family::logitnorm, Family::probitnorm};
    std::vector<double> m_values;
    std::vector<double> c_values;
    double se_target = 1e-3;
    std::uint64_t base_seed = 1;
    SolveOptions solve{};
};

struct SimCell {
    Family family;
    double m, c;
    double p1, p2;       // solved family parameters
    long long n;         // max of the Wald and Newcombe sample sizes
    double m_hat, c_hat;
    double dm, dc;       // m_hat - m, c_hat - c
    double risk_mean;    // mean of the sampled risks (m_hat uses outcomes)
    bool converged;
    std::uint64_t seed;
};

namespace detail {

inline void run_cell(SimCell& cell, double se_target, const SolveOptions& solve) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cell.p1 = cell.p2 = cell.m_hat = cell.c_hat = cell.dm = cell.dc = cell.risk_mean = nan;
    cell.n = 0;
    cell.converged = false;
    try {
        const MeanCstat mc{cell.m, cell.c};
        bool ok = false;
        switch (cell.family) {
            case Family::beta: {
                const auto rep = mcmap_beta(mc, solve);
                cell.p1 = rep.params.alpha;
                cell.p2 = rep.params.beta;
                ok = rep.converged;
                break;
            }
            case Family::logitnorm: {
                const auto rep = mcmap_logitnorm(mc, solve);
                cell.p1 = rep.params.mu;
                cell.p2 = rep.params.sigma;
                ok = rep.converged;
                break;
            }
            case Family::probitnorm: {
                const auto rep = mcmap_probitnorm(mc, solve);
                cell.p1 = rep.params.mu;
                cell.p2 = rep.params.sigma;
                ok = rep.converged;
                break;
            }
        }
        if (!ok) return;

        cell.n = std::max(wald_n(cell.m, se_target), newcombe_n(cell.m, cell.c, se_target));
        const auto risks = sample_risks(cell.family, cell.p1, cell.p2, cell.n,
                                        seed_combine(cell.seed, 1));
        const auto outcomes = simulate_outcomes(risks, seed_combine(cell.seed, 2));

        long long events = 0;
        double risk_sum = 0.0;
        for (std::size_t i = 0; i < risks.size(); ++i) {
            events += outcomes[i];
            risk_sum += risks[i];
        }
        cell.m_hat = static_cast<double>(events) / static_cast<double>(cell.n);
        cell.risk_mean = risk_sum / static_cast<double>(cell.n);
        cell.c_hat = empirical_cstat(risks, outcomes);
        cell.dm = cell.m_hat - cell.m;
        cell.dc = cell.c_hat - cell.c;
        cell.converged = true;
    } catch (const std::exception&) {
        cell.converged = false;  // recorded, not dropped
    }
}

}  // namespace detail

// One replicate per (family, m, c) cell. Cells are seeded by
// hash(base_seed, family, m-index, c-index) and are fully independent, so
// any thread count reproduces identical results in identical order.
inline std::vector<SimCell> run_grid(const SimGrid& grid, int threads = 1) {
    std::vector<SimCell> cells;
    cells.reserve(grid.families.size() * grid.m_values.size() * grid.c_values.size());
    for (std::size_t fi = 0; fi < grid.families.size(); ++fi)
        for (std::size_t mi = 0; mi < grid.m_values.size(); ++mi)
            for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
                SimCell cell{};
                cell.family = grid.families[fi];
                cell.m = grid.m_values[mi];
                cell.c = grid.c_values[ci];
                cell.seed = seed_combine(
                    seed_combine(
                        seed_combine(grid.base_seed,
                                     static_cast<std::uint64_t>(cell.family)),
                        mi),
                    ci);
                cells.push_back(cell);
            }

    if (threads <= 1) {
        for (auto& cell : cells) detail::run_cell(cell, grid.se_target, grid.solve);
        return cells;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), cells.size());
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                detail::run_cell(cells[i], grid.se_target, grid.solve);
            }
        });
    for (auto& th : pool) th.join();
    return cells;
}

inline void write_grid_csv(std::ostream& os, const std::vector<SimCell>& cells) {
    os << "family,m,c,p1,p2,n,m_hat,c_hat,dm,dc,converged,seed\n";
    for (const auto& cell : cells) {
        os << family_name(cell.family) << ',' << fmt_double(cell.m) << ','
           << fmt_double(cell.c) << ',' << fmt_double(cell.p1) << ','
           << fmt_double(cell.p2) << ',' << cell.n << ',' << fmt_double(cell.m_hat)
           << ',' << fmt_double(cell.c_hat) << ',' << fmt_double(cell.dm) << ','
           << fmt_double(cell.dc) << ',' << (cell.converged ? 1 : 0) << ',' << cell.seed
           << '\n';
    }
}

}  // namespace mcmap
