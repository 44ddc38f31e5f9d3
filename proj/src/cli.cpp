#include "skewtori/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <json.hpp>
#include <ostream>

#include "skewtori/catalog.hpp"
#include "skewtori/config.hpp"

namespace skewtori {

namespace {

using json = nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double elapsed_ms(clock_type::time_point from) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - from).count();
}

const char* class_name(map_class c) {
    switch (c) {
        case map_class::hyperbolic: return "hyperbolic";
        case map_class::not_hyperbolic: return "not_hyperbolic";
        default: return "not_unimodular";
    }
}

std::ofstream open_output(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw parse_error("cannot write output file: " + p.string());
    return f;
}

struct run_context {
    system_config config;
    std::string out_dir;
    double alpha = 0.0;
    imat2 a;
    map_class cls = map_class::not_unimodular;
    std::vector<std::string> warnings;
    json report;
    clock_type::time_point start = clock_type::now();

    void write_report(std::ostream& human) {
        report["timing_ms"]["total"] = elapsed_ms(start);
        auto f = open_output(std::filesystem::path(out_dir) / "report.json");
        f << report.dump(2) << "\n";
        human << "report: " << (std::filesystem::path(out_dir) / "report.json").string()
              << "\n";
    }
};

run_context make_context(const std::string& command, const system_config& cfg,
                         const std::string& out_dir) {
    run_context ctx;
    ctx.config = cfg;
    ctx.out_dir = out_dir;
    std::filesystem::create_directories(out_dir);
    ctx.alpha = resolve_alpha(cfg.alpha_text);
    ctx.a = config_matrix(cfg);
    ctx.cls = classify_hyperbolic(ctx.a);
    if (alpha_needs_warning(cfg.alpha_text))
        ctx.warnings.push_back(
            "IrrationalityWarning: alpha '" + cfg.alpha_text +
            "' is a decimal literal, hence rational; the invariant-torus theory assumes "
            "an irrational rotation (at double precision this is a modeling statement)");
    ctx.report["command"] = command;
    ctx.report["config"] = json::parse(emit_config(cfg));
    ctx.report["classification"] = class_name(ctx.cls);
    ctx.report["alpha"] = ctx.alpha;
    ctx.report["warnings"] = ctx.warnings;
    return ctx;
}

void add_system_facts(run_context& ctx) {
    const int m = minimal_degree_m(ctx.a, ctx.config.degree);
    const auto dg = torus_degree(ctx.a, ctx.config.degree, m);
    ctx.report["m"] = m;
    ctx.report["deg_g"] = {dg[0], dg[1]};
    ctx.report["degree_minimality"] = check_degree_minimality(ctx.a, ctx.config.degree, m);
    ctx.report["h_top"] = topological_entropy(ctx.a);
    const hyperbolic_splitting split = eigen_split(ctx.a);
    ctx.report["eigenvalues"] = {{"lambda_u", split.lambda_u},
                                 {"lambda_s", split.lambda_s}};
}

int cmd_analyze(run_context& ctx, std::ostream& out, std::ostream& err) {
    if (ctx.cls != map_class::hyperbolic) {
        ctx.report["note"] = "system rejected: matrix is not hyperbolic";
        ctx.write_report(out);
        err << "not hyperbolic: the configured matrix has no expanding eigenvalue\n";
        return 2;
    }
    add_system_facts(ctx);
    ctx.write_report(out);
    out << "classification: hyperbolic, m=" << ctx.report["m"]
        << ", deg_g=" << ctx.report["deg_g"].dump()
        << ", h_top=" << fmt17(ctx.report["h_top"].get<double>()) << "\n";
    return 0;
}

void write_solve_csv(const run_context& ctx, const torus_solution& sol,
                     const force_map& h) {
    const std::vector<double> rows =
        invariance_residual_rows(sol, ctx.a, ctx.alpha, h);
    auto f = open_output(std::filesystem::path(ctx.out_dir) / "solve.csv");
    f << "omega_prime,g1_lift,g2_lift,g1_mod1,g2_mod1,residual\n";
    const int n = sol.grid_size();
    for (int i = 0; i < n; ++i) {
        const double w = static_cast<double>(i) / n;
        const vec2 lift = sol.lift_grid[i];
        const vec2 mod = wrap01(lift);
        f << fmt17(w) << ',' << fmt17(lift.x) << ',' << fmt17(lift.y) << ','
          << fmt17(mod.x) << ',' << fmt17(mod.y) << ',' << fmt17(rows[i]) << "\n";
    }
}

int cmd_solve(run_context& ctx, std::ostream& out, std::ostream&) {
    add_system_facts(ctx);
    const force_map h = build_force(ctx.config);
    const int m = ctx.report["m"].get<int>();
    const auto t0 = clock_type::now();
    const torus_solution sol = build_base_torus(ctx.a, ctx.alpha, h, m,
                                                ctx.config.solver.grid,
                                                ctx.config.solver.tol);
    ctx.report["timing_ms"]["solve"] = elapsed_ms(t0);
    ctx.report["residuals"] = {{"base", sol.residual_sup},
                               {"min_mode_det", sol.min_mode_det}};
    ctx.report["modes_stored"] = static_cast<int>(sol.modes.size());
    if (sol.correction) {
        ctx.report["correction"] = {{"truncation", sol.correction->truncation},
                                    {"tail_bound", sol.correction->tail_bound},
                                    {"residual", sol.correction->residual_sup}};
    }
    if (h.is_zero()) ctx.report["note"] = "constant tori (h = 0): the base section is zero";
    write_solve_csv(ctx, sol, h);
    ctx.write_report(out);
    out << "base torus solved: m=" << m << ", residual=" << fmt17(sol.residual_sup)
        << ", csv=" << (std::filesystem::path(ctx.out_dir) / "solve.csv").string() << "\n";
    if (ctx.config.solver.residual_ceiling &&
        sol.residual_sup > *ctx.config.solver.residual_ceiling)
        throw verification_failure("invariance residual " + fmt17(sol.residual_sup) +
                                   " exceeds the configured ceiling " +
                                   fmt17(*ctx.config.solver.residual_ceiling));
    return 0;
}

int cmd_enumerate(run_context& ctx, int n, std::ostream& out, std::ostream&) {
    add_system_facts(ctx);
    const force_map h = build_force(ctx.config);
    const auto t0 = clock_type::now();
    const torus_catalog cat =
        enumerate_tori(ctx.a, ctx.alpha, h, n, ctx.config.solver.budget,
                       ctx.config.solver.grid, ctx.config.solver.tol);
    ctx.report["timing_ms"]["enumerate"] = elapsed_ms(t0);

    json counts;
    counts["horizon"] = n;
    counts["enumerated"] = cat.enumerated;
    json per = json::array();
    json cum = json::array();
    for (const bigint& v : cat.counts_by_period) per.push_back(v.str());
    for (const bigint& v : cat.cumulative) cum.push_back(v.str());
    counts["per_period"] = std::move(per);
    counts["cumulative"] = std::move(cum);
    counts["total"] = cat.cumulative.back().str();
    ctx.report["counts"] = std::move(counts);
    ctx.report["counts_note"] =
        "torus counts depend only on the matrix, never on the force";
    ctx.report["residuals"] = {{"base", cat.base.residual_sup},
                               {"catalog_max", cat.max_residual}};
    if (cat.m > 1) ctx.report["min_branch_separation"] = cat.min_branch_separation;
    if (h.is_zero())
        ctx.report["note"] = "constant tori (h = 0): descriptors are the periodic points";

    auto f = open_output(std::filesystem::path(ctx.out_dir) / "catalog.csv");
    f << "x_num,x_den,y_num,y_den,least_period,residual\n";
    for (const torus_descriptor& d : cat.descriptors)
        f << d.translate.x.num << ',' << d.translate.x.den << ',' << d.translate.y.num
          << ',' << d.translate.y.den << ',' << d.period << ',' << fmt17(d.residual)
          << "\n";
    ctx.write_report(out);
    out << "catalog: " << cat.cumulative.back().str() << " tori up to period " << n
        << (cat.enumerated ? "" : " (counts only: budget exceeded)")
        << ", csv=" << (std::filesystem::path(ctx.out_dir) / "catalog.csv").string()
        << "\n";
    return 0;
}

int cmd_growth(run_context& ctx, int n_max, std::ostream& out, std::ostream&) {
    add_system_facts(ctx);
    const auto t0 = clock_type::now();
    const growth_report rep = growth_rate_table(ctx.a, n_max);
    ctx.report["timing_ms"]["growth"] = elapsed_ms(t0);

    auto f = open_output(std::filesystem::path(ctx.out_dir) / "growth.csv");
    f << "n,lower,exact,upper,rate_lower,rate_upper,h_top\n";
    for (const growth_row& r : rep.rows)
        f << r.n << ',' << r.lower.str() << ',' << r.exact.str() << ',' << r.upper.str()
          << ',' << fmt17(r.rate_lower) << ',' << fmt17(r.rate_upper) << ','
          << fmt17(rep.h_top) << "\n";
    auto p = open_output(std::filesystem::path(ctx.out_dir) / "growth_rates.dat");
    for (const growth_row& r : rep.rows)
        p << r.n << ' ' << fmt17(r.rate_exact) << "\n";

    const growth_row& last = rep.rows.back();
    ctx.report["rates"] = {{"final_n", last.n},
                           {"final_rate_exact", last.rate_exact},
                           {"final_gap", std::abs(last.rate_exact - rep.h_top)},
                           {"h_top", rep.h_top}};
    ctx.report["counts_note"] =
        "torus counts depend only on the matrix, never on the force";
    ctx.write_report(out);
    out << "growth: n_max=" << n_max << ", rate(" << last.n << ")="
        << fmt17(last.rate_exact) << ", h_top=" << fmt17(rep.h_top)
        << ", gap=" << fmt17(std::abs(last.rate_exact - rep.h_top)) << "\n";
    return 0;
}

struct verify_check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool lower_is_pass = false; // true when value must exceed the bound
    bool pass = false;
};

int cmd_verify(run_context& ctx, int n, bool corrupt, std::ostream& out, std::ostream&) {
    add_system_facts(ctx);
    const force_map h = build_force(ctx.config);
    const int m = ctx.report["m"].get<int>();
    const int grid = ctx.config.solver.grid;
    const double tol = ctx.config.solver.tol;

    torus_solution sol = build_base_torus(ctx.a, ctx.alpha, h, m, grid, tol);
    if (corrupt) {
        sol.modes[0].x += 1e-3;
        for (int i = 0; i < sol.grid_size(); ++i)
            sol.lift_grid[i] = sol.eval_lift(static_cast<double>(i) / grid);
    }

    std::vector<verify_check> checks;

    // 1. One-step invariance of the solved section.
    {
        verify_check c;
        c.name = "invariance_residual";
        c.value = invariance_residual(sol, ctx.a, ctx.alpha, h, m, grid);
        c.bound = ctx.config.solver.residual_ceiling.value_or(
            std::max(1e-6, 100.0 * tol));
        c.pass = c.value <= c.bound;
        checks.push_back(c);
    }
    const double measured_residual = checks[0].value;

    // 2. Mode support: no stored coefficient off multiples of m.
    {
        verify_check c;
        c.name = "mode_support";
        for (const auto& [j, aj] : sol.modes)
            if (j % m != 0) c.value = std::max(c.value, inf_norm(aj));
        c.bound = 0.0;
        c.pass = c.value <= c.bound;
        checks.push_back(c);
    }

    // 3. Hermitian symmetry of the stored modes.
    {
        verify_check c;
        c.name = "hermitian_modes";
        for (const auto& [j, aj] : sol.modes) {
            const auto it = sol.modes.find(-j);
            const cvec2 other = it == sol.modes.end() ? cvec2{} : it->second;
            c.value = std::max(c.value, std::abs(other.x - std::conj(aj.x)));
            c.value = std::max(c.value, std::abs(other.y - std::conj(aj.y)));
        }
        c.bound = 1e-13;
        c.pass = c.value <= c.bound;
        checks.push_back(c);
    }

    // 4. Translate invariance: shifting by a fixed point must not change the
    // one-step defect.
    {
        verify_check c;
        c.name = "translate_invariance";
        const int vgrid = std::min(grid, 256);
        const dmat2 ad = to_double(ctx.a);
        const double alpha_induced = ctx.alpha / m;
        const auto one_step = [&](vec2 shift) {
            double sup = 0.0;
            for (int i = 0; i < vgrid; ++i) {
                const double w = static_cast<double>(i) / vgrid;
                const vec2 lhs = sol.eval_lift(w + alpha_induced) + shift;
                const vec2 rhs =
                    ad * (sol.eval_lift(w) + shift) + evaluate_lift(h, m * w);
                sup = std::max(sup, torus_dist(wrap01(lhs), wrap01(rhs)));
            }
            return sup;
        };
        const double base_res = one_step({0.0, 0.0});
        const fixed_point_set fps = fixed_points(ctx.a, 1, 64);
        for (const ratpoint& p : fps.points) {
            const double shifted = one_step({p.x.value(), p.y.value()});
            c.value = std::max(c.value, std::abs(shifted - base_res));
        }
        c.bound = 1e-12;
        c.pass = c.value <= c.bound;
        checks.push_back(c);
    }

    // 5. Branch distinctness over the fiber at 0 (trivial for m = 1).
    {
        verify_check c;
        c.name = "branch_distinctness";
        c.lower_is_pass = true;
        c.bound = std::max(1e-6, 10.0 * tol);
        c.value = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                c.value = std::min(
                    c.value,
                    torus_dist(wrap01(sol.eval_lift(static_cast<double>(i) / m)),
                               wrap01(sol.eval_lift(static_cast<double>(j) / m))));
        c.pass = c.value > c.bound;
        checks.push_back(c);
    }

    // 6. Conjugacy with the homogeneous system after n steps.
    {
        verify_check c;
        c.name = "conjugacy";
        c.value = conjugacy_check(ctx.a, ctx.alpha, h, sol, n, std::min(grid, 512));
        c.bound = 30.0 * std::max(measured_residual, 1e-13);
        c.pass = c.value <= c.bound;
        checks.push_back(c);
    }

    json jchecks = json::array();
    bool all_pass = true;
    for (const verify_check& c : checks) {
        jchecks.push_back({{"name", c.name},
                           {"value", c.value},
                           {"bound", c.bound},
                           {"relation", c.lower_is_pass ? ">" : "<="},
                           {"pass", c.pass}});
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << fmt17(c.value)
            << (c.lower_is_pass ? " > " : " <= ") << fmt17(c.bound) << "\n";
        all_pass = all_pass && c.pass;
    }
    ctx.report["checks"] = std::move(jchecks);
    ctx.report["residuals"] = {{"base", measured_residual},
                               {"min_mode_det", sol.min_mode_det}};
    if (h.is_zero()) {
        ctx.report["note"] = "constant tori (h = 0): the base section is zero";
        out << "note: constant tori (h = 0)\n";
    }
    ctx.write_report(out);
    if (!all_pass) {
        std::string failed;
        for (const verify_check& c : checks)
            if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
        out << "verification FAILED: " << failed << "\n";
        return 3;
    }
    out << "verification passed: " << checks.size() << " checks\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariant tori of quasi-periodically forced affine torus maps"};
    app.fallthrough();

    std::string config_path;
    std::string out_dir = ".";
    int grid_override = 0;
    double tol_override = 0.0;
    long long budget_override = 0;
    int n = 0;
    int n_max = 0;
    bool corrupt = false;

    app.add_option("--config", config_path, "path to the JSON system config")
        ->required();
    app.add_option("--out", out_dir, "output directory (default: current)");
    app.add_option("--grid", grid_override, "override solver.grid")
        ->check(CLI::Range(16, 1 << 20));
    app.add_option("--tol", tol_override, "override solver.tol")
        ->check(CLI::Range(1e-15, 0.1));
    app.add_option("--budget", budget_override, "override solver.budget")
        ->check(CLI::PositiveNumber);

    CLI::App* analyze = app.add_subcommand(
        "analyze", "classification, torus cover degree, entropy; no solve");
    CLI::App* solve =
        app.add_subcommand("solve", "construct the base invariant torus section");
    CLI::App* enumerate =
        app.add_subcommand("enumerate", "catalog of invariant tori up to a period");
    enumerate->add_option("--n", n, "period horizon")->required()->check(CLI::Range(1, 64));
    CLI::App* growth =
        app.add_subcommand("growth", "torus-count growth rates against entropy");
    growth->add_option("--nmax", n_max, "largest period")
        ->required()
        ->check(CLI::Range(1, 120));
    CLI::App* verify =
        app.add_subcommand("verify", "invariance, symmetry, and conjugacy checks");
    verify->add_option("--n", n, "conjugacy horizon (default 3)")->check(CLI::Range(1, 16));
    verify->add_flag("--corrupt", corrupt,
                     "fault-injection hook: perturb one solved coefficient");
    app.require_subcommand(1);

    try {
        std::vector<const char*> argv;
        argv.push_back("skewtori");
        for (const std::string& s : args) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        system_config cfg = load_config_file(config_path);
        if (grid_override != 0) cfg.solver.grid = grid_override;
        if (tol_override != 0.0) cfg.solver.tol = tol_override;
        if (budget_override != 0) cfg.solver.budget = budget_override;

        if (analyze->parsed()) {
            run_context ctx = make_context("analyze", cfg, out_dir);
            return cmd_analyze(ctx, out, err);
        }
        if (solve->parsed()) {
            run_context ctx = make_context("solve", cfg, out_dir);
            return cmd_solve(ctx, out, err);
        }
        if (enumerate->parsed()) {
            run_context ctx = make_context("enumerate", cfg, out_dir);
            return cmd_enumerate(ctx, n, out, err);
        }
        if (growth->parsed()) {
            run_context ctx = make_context("growth", cfg, out_dir);
            return cmd_growth(ctx, n_max, out, err);
        }
        run_context ctx = make_context("verify", cfg, out_dir);
        return cmd_verify(ctx, n == 0 ? 3 : n, corrupt, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const verification_failure& e) {
        err << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        err << "inadmissible system: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace skewtori
