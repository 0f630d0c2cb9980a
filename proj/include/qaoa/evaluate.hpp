#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "qaoa/graph.hpp"
#include "qaoa/lightcone.hpp"
#include "qaoa/nelder_mead.hpp"
#include "qaoa/params.hpp"
#include "qaoa/statevector.hpp"
#include "qaoa/tree_params.hpp"

namespace qaoa {

enum class Engine { Dense, LightCone };

struct EvaluateOptions {
    Engine engine = Engine::Dense;
    EdgeBackend backend = EdgeBackend::Dense;  // light-cone per-edge backend
    bool memoize = true;
    double budget = kDefaultContractionBudget;
    std::optional<int> known_maxcut;
};

// Expectation report for the full graph under either engine. The dense
// engine additionally fills best_cut_probability when MaxCut is supplied.
inline ExpectationReport evaluate_on_graph(const Graph& g, const MixerSpec& mixer,
                                           const QaoaParams& params,
                                           const EvaluateOptions& opt = {}) {
    params.validate();
    ExpectationReport report;
    if (opt.engine == Engine::Dense) {
        if (g.vertex_count() > kMaxDenseQubits)
            throw std::invalid_argument("evaluate_on_graph: dense engine limited to 28 vertices, got " +
                                        std::to_string(g.vertex_count()));
        const StateVector state = run_qaoa(g, mixer, params);
        double total = 0.0;
        for (const auto& [u, v] : g.edges()) {
            const double prob = edge_cut_probability(state, u, v);
            report.per_edge.emplace_back(Edge{u, v}, prob);
            total += prob;
        }
        report.total_expectation = total;
        report.cut_fraction = g.edge_count() > 0 ? total / g.edge_count() : 0.0;
        if (opt.known_maxcut) {
            report.approx_ratio = total / *opt.known_maxcut;
            report.best_cut_probability = best_cut_probability(state, *opt.known_maxcut, g);
        }
    } else {
        report = graph_expectation(g, mixer, params, opt.backend, opt.memoize, opt.budget);
        if (opt.known_maxcut)
            report.approx_ratio = report.total_expectation / *opt.known_maxcut;
    }
    return report;
}

// Derivative-free ascent from a starting schedule; the start is part of the
// initial simplex, so the returned expectation never drops below the
// starting one. budget counts objective evaluations.
inline std::pair<QaoaParams, ExpectationReport> ascend_from(const Graph& g,
                                                            const MixerSpec& mixer,
                                                            const QaoaParams& start, int budget,
                                                            const EvaluateOptions& opt = {},
                                                            std::uint64_t seed = 1) {
    start.validate();
    const ExpectationReport start_report = evaluate_on_graph(g, mixer, start, opt);
    if (budget <= 0 || start.depth() == 0) return {start, start_report};

    const int p = start.depth();
    const auto box = parameter_box(p);
    const Objective objective = [&](const std::vector<double>& x) {
        return evaluate_on_graph(g, mixer, unpack_params(x, p), opt).total_expectation;
    };

    NelderMeadOptions nm;
    nm.max_evals = budget;
    OptimizeResult best = nelder_mead_maximize(objective, pack_params(start), box, nm);

    // jittered restarts with whatever budget remains
    Rng rng(seed);
    int used = best.evals;
    while (budget - used > 2 * p + 1) {
        auto x = pack_params(start);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += rng.uniform(-0.15, 0.15);
            x[i] = std::clamp(x[i], box[i].first, box[i].second);
        }
        nm.max_evals = budget - used;
        const OptimizeResult r = nelder_mead_maximize(objective, x, box, nm);
        used += r.evals;
        if (r.value > best.value) best = r;
    }

    if (best.value <= start_report.total_expectation) return {start, start_report};
    const QaoaParams tuned = unpack_params(best.x, p);
    return {tuned, evaluate_on_graph(g, mixer, tuned, opt)};
}

}  // namespace qaoa
