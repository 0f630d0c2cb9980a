// Acceptance suite: every release criterion at its stated tolerance, one
// pass/fail line each, nonzero exit when anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qaoa/evaluate.hpp"
#include "qaoa/gw.hpp"
#include "qaoa/harness.hpp"
#include "qaoa/lightcone.hpp"
#include "qaoa/tree_param_table.hpp"
#include "qaoa/tree_params.hpp"

using namespace qaoa;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> check;
};

QaoaParams random_params(Rng& rng, int p) {
    std::vector<double> g(p), b(p);
    for (double& x : g) x = rng.uniform(0.0, M_PI);
    for (double& x : b) x = rng.uniform(-M_PI / 4, M_PI / 4);
    return QaoaParams(g, b);
}

MixerSpec random_rotated(Rng& rng, int n) {
    std::vector<double> thetas(n);
    for (double& t : thetas) t = rng.uniform(0.0, 2.0 * M_PI);
    return MixerSpec::rotated(thetas);
}

bool criterion_fixed_angle_bound(std::string& detail) {
    const auto table = bundled_param_table();
    bool ok = true;
    double min_margin = 1e9;
    for (const bool bipartite : {false, true}) {
        for (int i = 0; i < 10; ++i) {
            const std::uint64_t seed = 40 + i;
            const Graph g = bipartite
                                ? generate_random_bipartite_regular(16, 3, seed)
                                : generate_unique_maxcut_regular(16, 3, seed, 400);
            const int maxcut = bipartite ? g.edge_count() : exact_maxcut(g).best.value;
            for (int p : {1, 2}) {
                const auto* entry = find_table_entry(table, 3, p);
                EvaluateOptions opt;
                opt.known_maxcut = maxcut;
                const auto report =
                    evaluate_on_graph(g, MixerSpec::standard(), entry->params, opt);
                const double margin = *report.approx_ratio - entry->f_value;
                min_margin = std::min(min_margin, margin);
                if (margin < -1e-9) ok = false;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "min ratio margin over bound: %+.3e", min_margin);
    detail = buf;
    return ok;
}

bool criterion_tree_optimum(std::string& detail) {
    const auto r1 = optimize_tree_params(3, 1, 8, 1);

    // independent 200x200 grid + shrinking refinement oracle
    const TreeEdgeEvaluator eval(3, 1);
    double oracle = -1.0, og = 0.0, ob = 0.0;
    double g_lo = 0.0, g_hi = M_PI, b_lo = -M_PI / 4, b_hi = M_PI / 4;
    for (int pass = 0; pass < 4; ++pass) {
        double best = -1.0, bg = 0.0, bb = 0.0;
        for (int i = 0; i <= 200; ++i) {
            for (int j = 0; j <= 200; ++j) {
                const double gamma = g_lo + (g_hi - g_lo) * i / 200.0;
                const double beta = b_lo + (b_hi - b_lo) * j / 200.0;
                const double f = eval(QaoaParams({gamma}, {beta}));
                if (f > best) {
                    best = f;
                    bg = gamma;
                    bb = beta;
                }
            }
        }
        if (best > oracle) {
            oracle = best;
            og = bg;
            ob = bb;
        }
        const double gw = (g_hi - g_lo) / 50.0, bw = (b_hi - b_lo) / 50.0;
        g_lo = og - gw;
        g_hi = og + gw;
        b_lo = ob - bw;
        b_hi = ob + bw;
    }

    const auto r2 = optimize_tree_params(3, 2, 8, 1);
    const auto table = bundled_param_table();
    const auto* p11 = find_table_entry(table, 3, 11);

    char buf[160];
    std::snprintf(buf, sizeof(buf), "f1=%.9f (oracle %.9f), f2=%.9f, table p=11 f=%.4f",
                  r1.f_value, oracle, r2.f_value, p11 ? p11->f_value : -1.0);
    detail = buf;
    return std::abs(r1.f_value - oracle) <= 1e-4 && r2.f_value >= r1.f_value &&
           p11 != nullptr && p11->f_value == 0.8828;
}

bool criterion_single_edge_law(std::string& detail) {
    const Graph edge(2, {{0, 1}});
    double max_err = 0.0;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double gamma = (i + 1) * M_PI / 6.0;
            const double beta = (j + 1) * M_PI / 20.0;
            const double analytic = 0.5 * (1.0 + std::sin(4 * beta) * std::sin(gamma));
            const auto state =
                run_qaoa(edge, MixerSpec::standard(), QaoaParams({gamma}, {beta}));
            max_err = std::max(max_err, std::abs(expected_cut(state, edge) - analytic));
        }
    }
    const auto best = run_qaoa(edge, MixerSpec::standard(), QaoaParams({M_PI / 2}, {M_PI / 8}));
    const double at_peak = expected_cut(best, edge);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max |err| %.2e on 5x5 grid, peak value %.15f", max_err,
                  at_peak);
    detail = buf;
    return max_err <= 1e-12 && std::abs(at_peak - 1.0) <= 1e-12;
}

bool criterion_lightcone_equivalence(std::string& detail) {
    Rng rng(7);
    double max_err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 10 + 2 * (trial % 4);  // 10..16
        const Graph g = generate_random_regular(n, 3, 900 + trial);
        const int p = 1 + trial % 2;
        const auto params = random_params(rng, p);
        const MixerSpec mixer =
            trial % 2 == 0 ? MixerSpec::standard() : random_rotated(rng, n);
        const double dense = expected_cut(run_qaoa(g, mixer, params), g);
        const auto report = graph_expectation(g, mixer, params, EdgeBackend::Dense);
        max_err = std::max(max_err, std::abs(report.total_expectation - dense));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max |err| %.2e over 20 graphs", max_err);
    detail = buf;
    return max_err < 1e-9;
}

bool criterion_tensor_backend(std::string& detail) {
    Rng rng(13);
    double max_err = 0.0;
    int edges_checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = generate_random_regular(12 + 2 * (trial % 2), 3, 1700 + trial);
        const int p = 1 + trial % 2;
        const auto params = random_params(rng, p);
        const MixerSpec mixer =
            trial % 2 == 0 ? MixerSpec::standard() : random_rotated(rng, g.vertex_count());
        for (const auto& e : g.edges()) {
            const auto task = make_task(g, mixer, params, e);
            if (task.neighborhood.subgraph.vertex_count() > 14) continue;
            const double dense = edge_expectation(task, EdgeBackend::Dense);
            const double tn = edge_expectation(task, EdgeBackend::TensorNetwork);
            max_err = std::max(max_err, std::abs(tn - dense));
            ++edges_checked;
        }
    }

    NeighborhoodTask tree_task;
    tree_task.neighborhood = build_tree_neighborhood(3, 3);
    tree_task.local_mixer = MixerSpec::standard();
    tree_task.params = QaoaParams({0.42, 0.80, 0.94}, {0.61, 0.46, 0.24});
    const auto plan = plan_contraction(tree_task);
    const bool p3_ok = plan.cost_estimate <= kDefaultContractionBudget;
    double p3_value = 0.0;
    if (p3_ok) p3_value = edge_expectation(tree_task, EdgeBackend::TensorNetwork);

    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "max |err| %.2e over %d edges; p=3 tree cost %.3g (budget %.3g), <ZZ>=%.6f",
                  max_err, edges_checked, plan.cost_estimate, kDefaultContractionBudget,
                  p3_value);
    detail = buf;
    return max_err <= 1e-6 && edges_checked > 0 && p3_ok && std::abs(p3_value) <= 1.0 + 1e-9;
}

bool criterion_gw_guarantee(std::string& detail) {
    double min_gw_margin = 1e9, min_rel_margin = 1e9;
    for (int i = 0; i < 20; ++i) {
        const Graph g = generate_random_regular(16, 3, 2200 + i);
        const auto sol = solve_sdp(g, 0, 1e-7, 400000, 60 + i);
        const double gw = expected_gw_cut(sol, g);
        const int maxcut = exact_maxcut(g).best.value;
        min_gw_margin = std::min(min_gw_margin, gw - 0.878 * sol.relaxed_value);
        min_rel_margin = std::min(min_rel_margin, sol.relaxed_value - maxcut);
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "min C_GW-0.878*C_REL=%.4f, min C_REL-maxcut=%.6f",
                  min_gw_margin, min_rel_margin);
    detail = buf;
    return min_gw_margin >= -1e-6 && min_rel_margin >= -1e-6;
}

bool criterion_rounding_consistency(std::string& detail) {
    double worst_gap_sigmas = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Graph g = generate_random_regular(14, 3, 3100 + i);
        const auto sol = solve_sdp(g, 0, 1e-7, 400000, 80 + i);
        const double closed = expected_gw_cut(sol, g);
        double sum = 0.0, sum_sq = 0.0;
        const int samples = 10000;
        for (int s = 0; s < samples; ++s) {
            const double v = round_hyperplane(sol, g, 50000 + s).value;
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / samples;
        const double sigma =
            std::sqrt(std::max(0.0, sum_sq / samples - mean * mean) / samples);
        worst_gap_sigmas = std::max(worst_gap_sigmas, std::abs(mean - closed) / sigma);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst |mean-C_GW| = %.2f sigma", worst_gap_sigmas);
    detail = buf;
    return worst_gap_sigmas <= 3.0;
}

bool criterion_bipartite_perfection(std::string& detail) {
    double worst_rel_gap = 0.0, worst_p0_gap = 0.0;
    std::vector<Graph> graphs;
    {
        std::vector<Edge> k33_edges;
        for (int u = 0; u < 3; ++u)
            for (int v = 3; v < 6; ++v) k33_edges.push_back({u, v});
        graphs.emplace_back(6, k33_edges);
    }
    graphs.push_back(generate_random_bipartite_regular(16, 3, 2));
    for (const auto& g : graphs) {
        const auto sol = solve_sdp(g, 0, 1e-8, 400000, 5);
        worst_rel_gap = std::max(worst_rel_gap, std::abs(sol.relaxed_value - g.edge_count()));
        const auto ws = project_to_plane(sol, 11);
        const auto alpha = optimize_alpha(ws.thetas, g);
        worst_p0_gap = std::max(worst_p0_gap, g.edge_count() - alpha.value);
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "worst |C_REL-|E||=%.2e, worst |E|-p0(alpha*)=%.2e",
                  worst_rel_gap, worst_p0_gap);
    detail = buf;
    return worst_rel_gap <= 1e-5 && worst_p0_gap <= 1e-3;
}

bool criterion_p0_bound(std::string& detail) {
    bool ok = true;
    double worst_margin = 1e9;
    for (int i = 0; i < 5; ++i) {
        const Graph g = generate_random_regular(16, 3, 4300 + i);
        const auto sol = solve_sdp(g, 0, 1e-7, 400000, 90 + i);
        const double gw = expected_gw_cut(sol, g);
        Rng rng(200 + i);
        const int planes = 500;
        double sum = 0.0, sum_sq = 0.0, opt_sum = 0.0;
        for (int k = 0; k < planes; ++k) {
            const auto ws = project_to_plane(sol, 70000 + 1000 * i + k);
            const double v = p0_expectation(ws.thetas, rng.uniform(0.0, 2 * M_PI), g);
            sum += v;
            sum_sq += v * v;
            opt_sum += optimize_alpha(ws.thetas, g).value;
        }
        const double mean = sum / planes;
        const double sigma =
            std::sqrt(std::max(0.0, sum_sq / planes - mean * mean) / planes);
        const double margin = mean - (0.75 * gw - 3.0 * sigma);
        worst_margin = std::min(worst_margin, margin);
        if (margin < 0 || opt_sum / planes < mean) ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "worst margin over 0.75*C_GW-3sigma: %+.4f", worst_margin);
    detail = buf;
    return ok;
}

bool criterion_alpha_closed_form(std::string& detail) {
    Rng rng(17);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = generate_random_regular(12 + 2 * (trial % 3), 3, 5600 + trial);
        std::vector<double> thetas(g.vertex_count());
        for (double& t : thetas) t = rng.uniform(0.0, 2 * M_PI);
        const auto result = optimize_alpha(thetas, g);
        double grid_best = -1.0;
        for (int k = 0; k < 10000; ++k)
            grid_best = std::max(grid_best,
                                 p0_expectation(thetas, 2 * M_PI * k / 10000.0, g));
        worst = std::max(worst, grid_best - result.value);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max grid-over-closed-form gap %.2e", worst);
    detail = buf;
    return worst <= 1e-8;
}

bool criterion_axis_sweep(std::string& detail) {
    const Graph g = generate_random_regular(24, 3, 77);
    const auto sol = solve_sdp(g, 0, 1e-7, 400000, 7);
    const auto ws = project_to_plane(sol, 3);
    const auto alpha = optimize_alpha(ws.thetas, g);
    const auto table = bundled_param_table();

    const int points = 64;
    std::vector<double> variation(3, 0.0);
    double p0_sweep_max = -1e9;
    for (int p : {0, 1, 2}) {
        double lo = 1e9, hi = -1e9;
        for (int k = 0; k < points; ++k) {
            const double angle = 2.0 * M_PI * k / points;
            double value;
            if (p == 0) {
                value = p0_expectation(ws.thetas, angle, g);
                p0_sweep_max = std::max(p0_sweep_max, value);
            } else {
                WarmStart rotated = ws;
                rotated.alpha = angle;
                const auto inputs = build_warmstart_qaoa_inputs(rotated);
                EvaluateOptions opt;
                opt.engine = Engine::LightCone;
                const auto* entry = find_table_entry(table, 3, p);
                value = evaluate_on_graph(g, inputs.mixer, entry->params, opt)
                            .total_expectation;
            }
            lo = std::min(lo, value);
            hi = std::max(hi, value);
        }
        variation[p] = hi - lo;
    }
    const bool peak_ok = alpha.value >= p0_sweep_max - 1e-9;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "variation p0=%.3f p1=%.3f p2=%.3f; p0 max at alpha* (%+.1e)", variation[0],
                  variation[1], variation[2], alpha.value - p0_sweep_max);
    detail = buf;
    return peak_ok && variation[1] < variation[0] && variation[2] < variation[0];
}

bool criterion_ascent_retention(std::string& detail) {
    Rng rng(23);
    int violations = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = generate_random_regular(12, 3, 6000 + trial);
        const int p = 1 + trial % 2;
        const auto start = random_params(rng, p);
        const double base =
            evaluate_on_graph(g, MixerSpec::standard(), start, {}).total_expectation;
        const auto [params, report] =
            ascend_from(g, MixerSpec::standard(), start, 30 + trial % 20, {}, trial);
        if (report.total_expectation < base) ++violations;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d violations in 50 trials", violations);
    detail = buf;
    return violations == 0;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"fixed-angle bound: ratio >= f_tree - 1e-9, n=16, 10+10 graphs, p in {1,2}",
         criterion_fixed_angle_bound},
        {"tree optimum: f1 vs 200x200 grid oracle (1e-4), f2 >= f1, table p=11 reads 0.8828",
         criterion_tree_optimum},
        {"single-edge law: 0.5*(1+sin4b*sing) within 1e-12, peak 1 at (pi/2, pi/8)",
         criterion_single_edge_law},
        {"light-cone equivalence: |total - dense| < 1e-9, 20 graphs, both mixers",
         criterion_lightcone_equivalence},
        {"tensor backend: per-edge agreement 1e-6; p=3 tree under default budget",
         criterion_tensor_backend},
        {"GW guarantee: C_GW >= 0.878*C_REL - 1e-6 and C_REL >= maxcut - 1e-6, 20 graphs",
         criterion_gw_guarantee},
        {"rounding consistency: 10^4 samples within 3 sigma of C_GW, 5 instances",
         criterion_rounding_consistency},
        {"bipartite perfection: C_REL = |E| (1e-5), optimized-alpha p0 >= |E| - 1e-3",
         criterion_bipartite_perfection},
        {"p=0 bound: 500-plane mean >= 0.75*C_GW - 3sigma; optimized >= random",
         criterion_p0_bound},
        {"alpha closed form matches 10^4-point grid within 1e-8, 20 warm starts",
         criterion_alpha_closed_form},
        {"axis sweep n=24: p0 peaks at alpha*, p1/p2 variation < p0 variation",
         criterion_axis_sweep},
        {"ascent retention: never below the start, 50 randomized trials",
         criterion_ascent_retention},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only > 0 && static_cast<int>(i + 1) != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2zu. %s  --  %s  (%.1f s)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str(), seconds);
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    if (failed == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failed);
    return failed == 0 ? 0 : 1;
}
