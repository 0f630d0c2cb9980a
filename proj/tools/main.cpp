// maxcut-qaoa: MaxCut QAOA workbench.
//
// Subcommands: gen, maxcut, gw, warmstart, qaoa, tree-params, recipe.
// Errors come back as a single machine-parseable line on stderr
// ("error: ...") with a nonzero exit code.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qaoa/evaluate.hpp"
#include "qaoa/graph.hpp"
#include "qaoa/gw.hpp"
#include "qaoa/harness.hpp"
#include "qaoa/lightcone.hpp"
#include "qaoa/tree_param_table.hpp"
#include "qaoa/tree_params.hpp"

namespace {

using namespace qaoa;

std::vector<TreeParamResult> load_table_or_bundled(const std::string& table_path) {
    if (table_path.empty()) return bundled_param_table();
    return load_param_table(table_path);
}

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct GenArgs {
    int n = 16, degree = 3, max_attempts = 400;
    std::uint64_t seed = 1;
    bool bipartite = false, unique_maxcut = false;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    Graph g = a.unique_maxcut
                  ? generate_unique_maxcut_regular(a.n, a.degree, a.seed, a.max_attempts,
                                                   a.bipartite)
                  : (a.bipartite ? generate_random_bipartite_regular(a.n, a.degree, a.seed)
                                 : generate_random_regular(a.n, a.degree, a.seed));
    if (!a.out.empty()) write_graph_file(a.out, g);
    std::printf("n=%d m=%d hash=%s", g.vertex_count(), g.edge_count(),
                graph_hash_hex(g).c_str());
    if (g.vertex_count() <= 32) {
        const auto mc = exact_maxcut(g);
        std::printf(" maxcut=%d maxima=%llu", mc.best.value,
                    static_cast<unsigned long long>(mc.count_of_maxima));
    }
    std::printf("\n");
    return 0;
}

int cmd_maxcut(const std::string& graph_path) {
    const Graph g = read_graph_file(graph_path);
    const auto mc = exact_maxcut(g);
    std::printf("maxcut=%d maxima=%llu assignment=", mc.best.value,
                static_cast<unsigned long long>(mc.count_of_maxima));
    for (int z : mc.best.assignment) std::printf("%c", z > 0 ? '+' : '-');
    std::printf("\n");
    return 0;
}

struct GwArgs {
    std::string graph_path;
    int rank = 0, max_iters = 400000;
    double tol = 1e-7;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> round_seed;
    int plane_round_grid = 0;
    std::uint64_t plane_seed = 1;
};

int cmd_gw(const GwArgs& a) {
    const Graph g = read_graph_file(a.graph_path);
    const auto sol = solve_sdp(g, a.rank, a.tol, a.max_iters, a.seed);
    const auto report = gw_report(sol, g, a.round_seed);
    std::printf("c_rel=%.12g c_gw=%.12g converged=%d gradient_norm=%.3g rank=%d\n",
                report.relaxed_value, report.expected_cut, sol.converged ? 1 : 0,
                sol.gradient_norm, sol.rank);
    if (report.sampled_cut)
        std::printf("sampled_cut=%d\n", report.sampled_cut->value);
    if (a.plane_round_grid > 0) {
        const auto ws = project_to_plane(sol, a.plane_seed);
        const auto rounding = best_line_rounding(ws, g, a.plane_round_grid);
        std::printf("plane_cut=%d line_angle=%.12g plane_seed=%llu\n", rounding.cut.value,
                    rounding.line_angle, static_cast<unsigned long long>(a.plane_seed));
    }
    return 0;
}

struct WarmstartArgs {
    std::string graph_path, out;
    std::uint64_t plane_seed = 1, sdp_seed = 1;
    double tol = 1e-7;
    bool optimize = false;
};

int cmd_warmstart(const WarmstartArgs& a) {
    const Graph g = read_graph_file(a.graph_path);
    const auto sol = solve_sdp(g, 0, a.tol, 400000, a.sdp_seed);
    WarmStart ws = project_to_plane(sol, a.plane_seed);
    if (a.optimize) ws.alpha = optimize_alpha(ws.thetas, g).alpha;
    if (!a.out.empty()) write_warmstart_file(a.out, ws);
    std::printf("n=%d plane_seed=%llu alpha=%.12g p0_expectation=%.12g c_gw=%.12g c_rel=%.12g\n",
                g.vertex_count(), static_cast<unsigned long long>(ws.plane_seed), ws.alpha,
                p0_expectation(ws.thetas, ws.alpha, g), expected_gw_cut(sol, g),
                sol.relaxed_value);
    return 0;
}

struct QaoaArgs {
    std::string graph_path, params = "tree", table_path, warmstart_path, engine = "dense",
                backend = "dense", edge_dump, out;
    int p = 1;
    std::vector<double> gammas, betas;
    std::string maxcut = "exact";  // exact | none | <integer>
    int ascend = 0;
    std::uint64_t seed = 1;
    double budget = kDefaultContractionBudget;
    bool memoize_on = false, memoize_off = false;
};

int cmd_qaoa(const QaoaArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph g = read_graph_file(a.graph_path);

    QaoaParams params;
    if (a.params == "tree") {
        const auto table = load_table_or_bundled(a.table_path);
        const auto* entry = find_table_entry(table, 3, a.p);
        if (!entry) throw std::runtime_error("no tree parameters for p=" + std::to_string(a.p));
        params = entry->params;
    } else if (a.params == "explicit") {
        params = QaoaParams(a.gammas, a.betas);
        if (params.depth() != a.p)
            throw std::runtime_error("explicit angles do not match --p");
    } else {
        throw std::runtime_error("unknown --params mode '" + a.params + "'");
    }
    params.validate();

    MixerSpec mixer = MixerSpec::standard();
    std::string strategy = a.ascend > 0 ? "standard-ascend" : "standard-tree";
    if (!a.warmstart_path.empty()) {
        const auto ws = read_warmstart_file(a.warmstart_path);
        if (static_cast<int>(ws.thetas.size()) != g.vertex_count())
            throw std::runtime_error("warm-start size does not match graph");
        mixer = build_warmstart_qaoa_inputs(ws).mixer;
        strategy = a.ascend > 0 ? "warmstart-ascend" : "warmstart-tree";
    }

    EvaluateOptions opt;
    opt.engine = a.engine == "lightcone" ? Engine::LightCone : Engine::Dense;
    opt.backend = a.backend == "tn" ? EdgeBackend::TensorNetwork : EdgeBackend::Dense;
    // default: memoize standard-mixer runs; warm-start angles are generically
    // all-distinct, so hits are rare there
    opt.memoize = mixer.kind == MixerSpec::Kind::Standard;
    if (a.memoize_on) opt.memoize = true;
    if (a.memoize_off) opt.memoize = false;
    opt.budget = a.budget;
    if (a.engine != "dense" && a.engine != "lightcone")
        throw std::runtime_error("unknown engine '" + a.engine + "'");
    if (a.maxcut == "exact") {
        if (g.vertex_count() <= 32) opt.known_maxcut = exact_maxcut(g).best.value;
    } else if (a.maxcut != "none") {
        opt.known_maxcut = std::stoi(a.maxcut);
    }

    ExpectationReport report;
    if (a.ascend > 0) {
        report = ascend_from(g, mixer, params, a.ascend, opt, a.seed).second;
    } else {
        report = evaluate_on_graph(g, mixer, params, opt);
    }

    if (!a.edge_dump.empty()) {
        if (opt.engine != Engine::LightCone)
            throw std::runtime_error("--edge-dump requires --engine lightcone");
        std::vector<EdgeDumpRow> rows;
        graph_expectation(g, mixer, params, opt.backend, opt.memoize, opt.budget, nullptr,
                          &rows);
        write_edge_dump_csv(a.edge_dump, rows);
    }

    ResultRecord r;
    r.graph_hash = graph_hash_hex(g);
    r.strategy = strategy;
    r.n = g.vertex_count();
    r.p = a.p;
    r.expectation = report.total_expectation;
    r.cut_fraction = report.cut_fraction;
    r.approx_ratio = report.approx_ratio;
    r.best_cut_prob = report.best_cut_probability;
    r.seed = a.seed;
    r.wall_ms = static_cast<long long>(wall_ms_since(t0));
    if (!a.out.empty()) {
        std::ofstream out(a.out);
        if (!out) throw std::runtime_error("cannot open for writing: " + a.out);
        out << kRecordsCsvHeader << '\n' << record_csv_row(r) << '\n';
    }
    std::printf("%s\n%s\n", kRecordsCsvHeader, record_csv_row(r).c_str());
    return 0;
}

struct TreeParamsArgs {
    int degree = 3, p = 1, restarts = 12;
    std::uint64_t seed = 1;
    std::string table_path, out;
    bool from_table = false;
};

int cmd_tree_params(const TreeParamsArgs& a) {
    TreeParamResult result;
    if (a.from_table) {
        const auto table = load_table_or_bundled(a.table_path);
        const auto* entry = find_table_entry(table, a.degree, a.p);
        if (!entry)
            throw std::runtime_error("no table entry for degree " + std::to_string(a.degree) +
                                     ", p " + std::to_string(a.p));
        result = *entry;
    } else {
        result = optimize_tree_params(a.degree, a.p, a.restarts, a.seed);
    }
    if (!a.out.empty()) {
        std::ofstream out(a.out);
        if (!out) throw std::runtime_error("cannot open for writing: " + a.out);
        write_param_table(out, {result});
    }
    std::printf("D=%d p=%d f=%.12g source=%s\ngammas =", result.degree, result.depth,
                result.f_value,
                result.source == TreeParamResult::Source::TableFile ? "table" : "optimized");
    for (double x : result.params.gammas) std::printf(" %.12g", x);
    std::printf("\nbetas  =");
    for (double x : result.params.betas) std::printf(" %.12g", x);
    std::printf("\n");
    return 0;
}

int cmd_recipe(const std::string& config_path, bool allow_large) {
    ExperimentConfig config = read_config_file(config_path);
    if (allow_large) config.allow_large = true;
    if (config.allow_large) {
        for (int n : config.sizes) {
            if (n < 256) continue;
            for (int p : config.depths)
                std::printf("cost estimate: n=%d p=%d -> %d edge tasks, light-cone balls up to "
                            "%lld vertices\n",
                            n, p, 3 * n / 2,
                            static_cast<long long>(worst_ball_size(n, config.degree, p)));
        }
    }
    const auto records = run_recipe(config);
    int failed = 0;
    for (const auto& r : records)
        if (!r.error.empty()) ++failed;
    std::printf("recipe=%s records=%zu failed_cells=%d outdir=%s\n", config.recipe.c_str(),
                records.size(), failed, config.outdir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MaxCut QAOA workbench: tree parameters, GW warm starts, "
                 "dense and light-cone expectation engines"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* sc_gen = app.add_subcommand("gen", "Generate a random regular graph");
    sc_gen->add_option("--n", gen.n, "vertex count");
    sc_gen->add_option("--degree", gen.degree, "vertex degree");
    sc_gen->add_option("--seed", gen.seed, "generator seed");
    sc_gen->add_flag("--bipartite", gen.bipartite, "bipartite instance");
    sc_gen->add_flag("--unique-maxcut", gen.unique_maxcut,
                     "post-select a single best cut (n <= 32)");
    sc_gen->add_option("--max-attempts", gen.max_attempts, "post-selection attempts");
    sc_gen->add_option("--out", gen.out, "graph file to write");

    std::string maxcut_graph;
    auto* sc_maxcut = app.add_subcommand("maxcut", "Exact MaxCut by enumeration (n <= 32)");
    sc_maxcut->add_option("--graph", maxcut_graph, "graph file")->required();

    GwArgs gw;
    std::int64_t round_seed_raw = -1;
    auto* sc_gw = app.add_subcommand("gw", "Solve the MaxCut SDP relaxation");
    sc_gw->add_option("--graph", gw.graph_path, "graph file")->required();
    sc_gw->add_option("--rank", gw.rank, "factorization rank (0 = auto)");
    sc_gw->add_option("--tol", gw.tol, "gradient norm tolerance");
    sc_gw->add_option("--max-iters", gw.max_iters, "iteration cap");
    sc_gw->add_option("--seed", gw.seed, "solver seed");
    sc_gw->add_option("--round-seed", round_seed_raw, "emit one hyperplane rounding");
    sc_gw->add_option("--plane-round", gw.plane_round_grid,
                      "grid size for in-plane line rounding (0 = off)");
    sc_gw->add_option("--plane-seed", gw.plane_seed, "projection plane seed");

    WarmstartArgs warm;
    auto* sc_warm = app.add_subcommand("warmstart", "Project the SDP solution to a warm start");
    sc_warm->add_option("--graph", warm.graph_path, "graph file")->required();
    sc_warm->add_option("--plane-seed", warm.plane_seed, "projection plane seed");
    sc_warm->add_option("--sdp-seed", warm.sdp_seed, "SDP solver seed");
    sc_warm->add_option("--tol", warm.tol, "SDP gradient tolerance");
    sc_warm->add_flag("--optimize-alpha", warm.optimize, "rotate axes to the p=0 optimum");
    sc_warm->add_option("--out", warm.out, "warm-start file to write");

    QaoaArgs qa;
    auto* sc_qaoa = app.add_subcommand("qaoa", "Evaluate the QAOA expectation");
    sc_qaoa->add_option("--graph", qa.graph_path, "graph file")->required();
    sc_qaoa->add_option("--p", qa.p, "depth");
    sc_qaoa->add_option("--params", qa.params, "tree | explicit");
    sc_qaoa->add_option("--gamma", qa.gammas, "explicit cost angles");
    sc_qaoa->add_option("--beta", qa.betas, "explicit mixer angles");
    sc_qaoa->add_option("--table", qa.table_path, "parameter table file");
    sc_qaoa->add_option("--warmstart", qa.warmstart_path, "warm-start file (rotated mixer)");
    sc_qaoa->add_option("--engine", qa.engine, "dense | lightcone");
    sc_qaoa->add_option("--backend", qa.backend, "light-cone backend: dense | tn");
    sc_qaoa->add_option("--budget", qa.budget, "contraction budget (scalar ops)");
    sc_qaoa->add_option("--maxcut", qa.maxcut, "exact | none | <value>");
    sc_qaoa->add_option("--ascend", qa.ascend, "optimization budget (0 = off)");
    sc_qaoa->add_option("--seed", qa.seed, "ascent seed");
    sc_qaoa->add_option("--edge-dump", qa.edge_dump, "per-edge CSV (lightcone only)");
    sc_qaoa->add_flag("--memoize", qa.memoize_on, "force neighborhood memoization on");
    sc_qaoa->add_flag("--no-memoize", qa.memoize_off, "force neighborhood memoization off");
    sc_qaoa->add_option("--out", qa.out, "record CSV to write");

    TreeParamsArgs tp;
    auto* sc_tp = app.add_subcommand("tree-params", "Optimize or look up tree parameters");
    sc_tp->add_option("--degree", tp.degree, "tree degree");
    sc_tp->add_option("--p", tp.p, "depth");
    sc_tp->add_option("--restarts", tp.restarts, "multi-start count");
    sc_tp->add_option("--seed", tp.seed, "restart seed");
    sc_tp->add_flag("--from-table", tp.from_table, "look up instead of optimizing");
    sc_tp->add_option("--table", tp.table_path, "parameter table file");
    sc_tp->add_option("--out", tp.out, "write the result as a table file");

    std::string config_path;
    bool allow_large = false;
    auto* sc_recipe = app.add_subcommand("recipe", "Run an experiment recipe from a config");
    sc_recipe->add_option("--config", config_path, "config file")->required();
    sc_recipe->add_flag("--allow-large", allow_large, "permit sizes of 256 and up");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc_gen) return cmd_gen(gen);
        if (*sc_maxcut) return cmd_maxcut(maxcut_graph);
        if (*sc_gw) {
            if (round_seed_raw >= 0) gw.round_seed = static_cast<std::uint64_t>(round_seed_raw);
            return cmd_gw(gw);
        }
        if (*sc_warm) return cmd_warmstart(warm);
        if (*sc_qaoa) return cmd_qaoa(qa);
        if (*sc_tp) return cmd_tree_params(tp);
        if (*sc_recipe) return cmd_recipe(config_path, allow_large);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
