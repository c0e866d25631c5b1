// Command-line front end: map {m,c} to family parameters, evaluate the
// forward map, run the simulation grid, and verify the mode/median
// counterexamples.
//
// Exit codes: 0 success, 1 usage or parse error, 2 domain error,
// 3 non-convergence.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcmap/counterex.hpp"
#include "mcmap/format.hpp"
#include "mcmap/mcmap.hpp"
#include "mcmap/simkit.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_domain = 2;
constexpr int exit_no_convergence = 3;

mcmap::Family parse_family(const std::string& name) {
    const auto f = mcmap::family_from_name(name);
    if (!f) throw std::domain_error("unknown family: " + name);
    return *f;
}

std::pair<const char*, const char*> param_names(mcmap::Family f) {
    return f == mcmap::Family::beta ? std::pair{"alpha", "beta"} : std::pair{"mu", "sigma"};
}

struct MapFlags {
    std::string family;
    double mean = 0.0;
    double cstat = 0.0;
    bool as_json = false;
    std::string base = "beta";             // CDF used by the generic mapper
    std::vector<double> start;             // optional start for the generic mapper
    mcmap::SolveOptions solve;
};

template <class Params>
int report_map(const std::string& family, const mcmap::SolveReport<Params>& rep,
               std::pair<const char*, const char*> names, double p1, double p2,
               bool as_json) {
    if (as_json) {
        json out{{"family", family},
                 {"params", {{names.first, p1}, {names.second, p2}}},
                 {"residual_i1", rep.residual_i1},
                 {"residual_i2", rep.residual_i2},
                 {"iterations", rep.iterations},
                 {"converged", rep.converged}};
        if (!rep.warning.empty()) out["warning"] = rep.warning;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "family: " << family << "\n"
                  << names.first << ": " << mcmap::fmt_double(p1) << "\n"
                  << names.second << ": " << mcmap::fmt_double(p2) << "\n"
                  << "residual_i1: " << mcmap::fmt_double(rep.residual_i1) << "\n"
                  << "residual_i2: " << mcmap::fmt_double(rep.residual_i2) << "\n"
                  << "iterations: " << rep.iterations << "\n"
                  << "converged: " << (rep.converged ? "true" : "false") << "\n";
        if (!rep.warning.empty()) std::cout << "warning: " << rep.warning << "\n";
    }
    return rep.converged ? exit_ok : exit_no_convergence;
}

int run_map(const MapFlags& flags) {
    const mcmap::MeanCstat mc{flags.mean, flags.cstat};
    if (flags.family == "beta") {
        const auto rep = mcmap_beta(mc, flags.solve);
        return report_map("beta", rep, param_names(mcmap::Family::beta), rep.params.alpha,
                          rep.params.beta, flags.as_json);
    }
    if (flags.family == "logitnorm") {
        const auto rep = mcmap_logitnorm(mc, flags.solve);
        return report_map("logitnorm", rep, param_names(mcmap::Family::logitnorm),
                          rep.params.mu, rep.params.sigma, flags.as_json);
    }
    if (flags.family == "probitnorm") {
        const auto rep = mcmap_probitnorm(mc, flags.solve);
        return report_map("probitnorm", rep, param_names(mcmap::Family::probitnorm),
                          rep.params.mu, rep.params.sigma, flags.as_json);
    }
    if (flags.family == "generic") {
        mcmap::validate(mc);
        const mcmap::Family base = parse_family(flags.base);
        std::pair<double, double> start;
        if (flags.start.size() == 2) {
            start = {flags.start[0], flags.start[1]};
        } else {
            switch (base) {  // mean-matched defaults
                case mcmap::Family::beta:
                    start = {2.0, 2.0 * (1.0 - mc.m) / mc.m};
                    break;
                case mcmap::Family::logitnorm:
                    start = {mcmap::logit(mc.m), 1.0};
                    break;
                case mcmap::Family::probitnorm:
                    start = {mcmap::std_normal_quantile(mc.m) * std::sqrt(2.0), 1.0};
                    break;
            }
        }
        mcmap::GenericOptions opt;
        static_cast<mcmap::SolveOptions&>(opt) = flags.solve;
        auto solve = [&](auto factory) { return mcmap_generic(factory, mc, start, opt); };
        mcmap::SolveReport<mcmap::GenericParams> rep;
        switch (base) {
            case mcmap::Family::beta:
                rep = solve([](double a, double b) -> std::optional<mcmap::BetaDist> {
                    if (!mcmap::BetaParams{a, b}.valid()) return std::nullopt;
                    return mcmap::BetaDist(a, b);
                });
                break;
            case mcmap::Family::logitnorm:
                rep = solve([](double mu, double s) -> std::optional<mcmap::LogitNormalDist> {
                    if (!mcmap::LogitNormalParams{mu, s}.valid()) return std::nullopt;
                    return mcmap::LogitNormalDist(mu, s);
                });
                break;
            case mcmap::Family::probitnorm:
                rep = solve([](double mu, double s) -> std::optional<mcmap::ProbitNormalDist> {
                    if (!mcmap::ProbitNormalParams{mu, s}.valid()) return std::nullopt;
                    return mcmap::ProbitNormalDist(mu, s);
                });
                break;
        }
        return report_map("generic(" + flags.base + ")", rep, param_names(base),
                          rep.params.p1, rep.params.p2, flags.as_json);
    }
    throw std::domain_error("unknown family: " + flags.family);
}

int run_eval(const std::string& family, double p1, double p2, bool as_json,
             double quad_tol) {
    mcmap::MeanCstat mc{};
    switch (parse_family(family)) {
        case mcmap::Family::beta:
            mc = mcmap::mc_of(mcmap::BetaDist(p1, p2), quad_tol);
            break;
        case mcmap::Family::logitnorm:
            mc = mcmap::mc_of(mcmap::LogitNormalDist(p1, p2), quad_tol);
            break;
        case mcmap::Family::probitnorm:
            mc = mcmap::mc_of(mcmap::ProbitNormalDist(p1, p2), quad_tol);
            break;
    }
    if (as_json) {
        std::cout << json{{"family", family}, {"p1", p1}, {"p2", p2}, {"m", mc.m}, {"c", mc.c}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "m: " << mcmap::fmt_double(mc.m) << "\n"
                  << "c: " << mcmap::fmt_double(mc.c) << "\n";
    }
    return exit_ok;
}

std::vector<double> sequence(double from, double to, double step) {
    if (!(step > 0.0)) throw std::domain_error("step must be positive");
    if (!(to >= from)) throw std::domain_error("range upper bound below lower bound");
    const auto count = static_cast<long long>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
        // snap to the nearest step multiple so grid values print cleanly
        const double x = from + static_cast<double>(i) * step;
        v.push_back(std::round(x / step) * step);
    }
    return v;
}

int run_counterexample(const std::string& kind, double a, bool as_json) {
    mcmap::CounterexampleReport rep{};
    if (kind == "mode")
        rep = mcmap::verify_mode_counterexample(a);
    else if (kind == "median")
        rep = mcmap::verify_median_counterexample(a);
    else
        throw std::domain_error("unknown counterexample kind: " + kind);

    const char* stat = kind == "mode" ? "mode" : "median";
    if (as_json) {
        std::cout << json{{"kind", kind},
                          {"a", rep.a},
                          {"a_mirror", rep.a_mirror},
                          {std::string(stat) + "_1", rep.stat1},
                          {std::string(stat) + "_2", rep.stat2},
                          {"m_1", rep.m1},
                          {"m_2", rep.m2},
                          {"c_1", rep.c1},
                          {"c_2", rep.c2},
                          {"sup_cdf_distance", rep.sup_cdf_distance},
                          {"same_" + kind, rep.same_stat},
                          {"same_c", rep.same_c},
                          {"distinct", rep.distinct},
                          {"verified", rep.verified()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "kind: " << kind << "\n"
                  << "a: " << mcmap::fmt_double(rep.a)
                  << "  (mirror: " << mcmap::fmt_double(rep.a_mirror) << ")\n"
                  << stat << "_1: " << mcmap::fmt_double(rep.stat1) << "\n"
                  << stat << "_2: " << mcmap::fmt_double(rep.stat2) << "\n"
                  << "c_1: " << mcmap::fmt_double(rep.c1) << "\n"
                  << "c_2: " << mcmap::fmt_double(rep.c2) << "\n"
                  << "sup_cdf_distance: " << mcmap::fmt_double(rep.sup_cdf_distance) << "\n"
                  << "verified: " << (rep.verified() ? "true" : "false") << "\n";
    }
    return rep.verified() ? exit_ok : exit_no_convergence;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"identify two-parameter risk distributions on [0,1] from a mean and c-statistic"};
    app.require_subcommand(1);

    MapFlags map_flags;
    auto* map_cmd = app.add_subcommand("map", "solve family parameters for a given {mean, c}");
    map_cmd->add_option("--family", map_flags.family, "beta|logitnorm|probitnorm|generic")
        ->required();
    map_cmd->add_option("--mean", map_flags.mean, "population mean risk, in (0,1)")->required();
    map_cmd->add_option("--cstat", map_flags.cstat, "c-statistic, in (0.5,1)")->required();
    map_cmd->add_flag("--json", map_flags.as_json, "emit JSON instead of text");
    map_cmd->add_option("--base", map_flags.base,
                        "base family CDF for --family generic (default beta)");
    map_cmd->add_option("--start", map_flags.start,
                        "start point for the generic mapper (two values)")
        ->expected(2);
    map_cmd->add_option("--quad-tol", map_flags.solve.quad_tol, "integration tolerance");
    int map_max_iter = -1;
    map_cmd->add_option("--max-iter", map_max_iter, "solver iteration cap");

    std::string eval_family;
    double eval_p1 = 0.0, eval_p2 = 0.0;
    bool eval_json = false;
    double eval_quad_tol = mcmap::default_quad_tol;
    auto* eval_cmd = app.add_subcommand("eval", "forward map: family parameters to {m, c}");
    eval_cmd->add_option("--family", eval_family, "beta|logitnorm|probitnorm")->required();
    eval_cmd->add_option("--p1", eval_p1, "first parameter (alpha or mu)")->required();
    eval_cmd->add_option("--p2", eval_p2, "second parameter (beta or sigma)")->required();
    eval_cmd->add_flag("--json", eval_json, "emit JSON instead of text");
    eval_cmd->add_option("--quad-tol", eval_quad_tol, "integration tolerance");

    std::vector<std::string> grid_families{"beta", "logitnorm", "probitnorm"};
    double m_from = 0.01, m_to = 0.50, m_step = 0.01;
    double c_from = 0.51, c_to = 0.99, c_step = 0.01;
    double grid_se = 0.001;
    std::uint64_t grid_seed = 1;
    int grid_threads = 1;
    std::string grid_out;
    mcmap::SolveOptions grid_solve;
    auto* grid_cmd = app.add_subcommand(
        "grid", "simulation grid over (m, c): solve, sample, re-estimate, tabulate errors");
    grid_cmd->add_option("--families", grid_families, "families to include")
        ->delimiter(',');
    grid_cmd->add_option("--m-from", m_from, "first mean value");
    grid_cmd->add_option("--m-to", m_to, "last mean value");
    grid_cmd->add_option("--m-step", m_step, "mean increment");
    grid_cmd->add_option("--c-from", c_from, "first c-statistic value");
    grid_cmd->add_option("--c-to", c_to, "last c-statistic value");
    grid_cmd->add_option("--c-step", c_step, "c-statistic increment");
    grid_cmd->add_option("--se", grid_se, "target standard error for both estimates");
    grid_cmd->add_option("--seed", grid_seed, "base seed for the per-cell streams");
    grid_cmd->add_option("--threads", grid_threads, "worker threads (output is identical)");
    grid_cmd->add_option("--out", grid_out, "output CSV path")->required();
    grid_cmd->add_option("--quad-tol", grid_solve.quad_tol, "integration tolerance");
    int grid_max_iter = -1;
    grid_cmd->add_option("--max-iter", grid_max_iter, "solver iteration cap");

    std::string cx_kind;
    double cx_a = 0.0;
    bool cx_json = false;
    auto* cx_cmd = app.add_subcommand("counterexample",
                                      "verify a mode/median non-identifiability pair");
    cx_cmd->add_option("--kind", cx_kind, "mode|median")->required();
    cx_cmd->add_option("--a", cx_a, "family parameter a")->required();
    cx_cmd->add_flag("--json", cx_json, "emit JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (map_max_iter > 0) {
        map_flags.solve.root_max_iter = map_max_iter;
        map_flags.solve.nm_max_iter = map_max_iter;
    }
    if (grid_max_iter > 0) {
        grid_solve.root_max_iter = grid_max_iter;
        grid_solve.nm_max_iter = grid_max_iter;
    }

    try {
        if (app.got_subcommand(map_cmd)) return run_map(map_flags);
        if (app.got_subcommand(eval_cmd))
            return run_eval(eval_family, eval_p1, eval_p2, eval_json, eval_quad_tol);
        if (app.got_subcommand(grid_cmd)) {
            mcmap::SimGrid grid;
            grid.families.clear();
            for (const auto& name : grid_families) grid.families.push_back(parse_family(name));
            grid.m_values = sequence(m_from, m_to, m_step);
            grid.c_values = sequence(c_from, c_to, c_step);
            grid.se_target = grid_se;
            grid.base_seed = grid_seed;
            grid.solve = grid_solve;
            const auto cells = mcmap::run_grid(grid, grid_threads);
            std::ofstream out(grid_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open output file: " + grid_out);
            mcmap::write_grid_csv(out, cells);
            std::cerr << "wrote " << cells.size() << " cells to " << grid_out << "\n";
            return exit_ok;
        }
        if (app.got_subcommand(cx_cmd)) return run_counterexample(cx_kind, cx_a, cx_json);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const mcmap::no_convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_no_convergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
