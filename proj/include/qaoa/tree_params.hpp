#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa/graph.hpp"
#include "qaoa/lightcone.hpp"
#include "qaoa/nelder_mead.hpp"
#include "qaoa/params.hpp"
#include "qaoa/statevector.hpp"

namespace qaoa {

// Instance-independent "tree parameters": the angle schedule maximizing the
// central-edge cut expectation f on the D-regular radius-p tree.
struct TreeParamResult {
    enum class Source { Optimized, TableFile };

    int degree = 3;
    int depth = 0;
    QaoaParams params;
    double f_value = 0.5;
    Source source = Source::Optimized;
};

inline std::int64_t tree_vertex_count(int degree, int p) {
    if (degree == 2) return 2 * p + 2;
    std::int64_t count = 0, shell = 2;
    for (int d = 0; d <= p; ++d) {
        count += shell;
        shell *= degree - 1;
    }
    return count;
}

// Central-edge cut expectation f_{p,D} of the standard QAOA on the radius-p
// D-regular tree. Small trees run dense; larger ones go through the tensor
// backend, which bounds the feasible (D, p) range.
inline double evaluate_tree_edge(int degree, int p, const QaoaParams& params,
                                 double budget = kDefaultContractionBudget) {
    params.validate();
    if (params.depth() != p)
        throw std::invalid_argument("evaluate_tree_edge: params depth != p");
    if (p == 0) return 0.5;
    const std::int64_t vertices = tree_vertex_count(degree, p);
    if (vertices > (std::int64_t{1} << 22))
        throw std::invalid_argument("evaluate_tree_edge: infeasible tree with " +
                                    std::to_string(vertices) + " vertices");

    NeighborhoodTask task;
    task.neighborhood = build_tree_neighborhood(degree, p);
    task.local_mixer = MixerSpec::standard();
    task.params = params;
    try {
        const EdgeBackend backend =
            vertices <= 20 ? EdgeBackend::Dense : EdgeBackend::TensorNetwork;
        return 0.5 * (1.0 - edge_expectation(task, backend, budget));
    } catch (const BudgetExceeded&) {
        throw std::invalid_argument("evaluate_tree_edge: tree with " +
                                    std::to_string(vertices) +
                                    " vertices exceeds the contraction budget");
    }
}

// Same quantity, but the tree network is planned once and re-contracted per
// schedule; this is what the optimizer calls in a loop.
class TreeEdgeEvaluator {
public:
    TreeEdgeEvaluator(int degree, int p, double budget = kDefaultContractionBudget)
        : degree_(degree), p_(p), budget_(budget) {
        if (p_ == 0) return;
        const std::int64_t vertices = tree_vertex_count(degree, p);
        dense_ = vertices <= 20;
        if (!dense_) {
            NeighborhoodTask probe;
            probe.neighborhood = build_tree_neighborhood(degree, p);
            probe.local_mixer = MixerSpec::standard();
            probe.params = QaoaParams(std::vector<double>(p, 0.1), std::vector<double>(p, 0.1));
            plan_ = plan_network(build_task_network(probe));
            if (plan_.cost_estimate > budget_) throw BudgetExceeded(plan_.cost_estimate);
        }
    }

    double operator()(const QaoaParams& params) const {
        if (p_ == 0) return 0.5;
        NeighborhoodTask task;
        task.neighborhood = build_tree_neighborhood(degree_, p_);
        task.local_mixer = MixerSpec::standard();
        task.params = params;
        const EdgeBackend backend = dense_ ? EdgeBackend::Dense : EdgeBackend::TensorNetwork;
        return 0.5 * (1.0 - edge_expectation(task, backend, budget_, dense_ ? nullptr : &plan_));
    }

private:
    int degree_;
    int p_;
    double budget_;
    bool dense_ = true;
    ContractionPlan plan_;
};

inline std::vector<std::pair<double, double>> parameter_box(int p) {
    std::vector<std::pair<double, double>> box;
    for (int i = 0; i < p; ++i) box.emplace_back(0.0, M_PI);            // gammas
    for (int i = 0; i < p; ++i) box.emplace_back(-M_PI / 4, M_PI / 4);  // betas
    return box;
}

inline QaoaParams unpack_params(const std::vector<double>& x, int p) {
    return QaoaParams(std::vector<double>(x.begin(), x.begin() + p),
                      std::vector<double>(x.begin() + p, x.end()));
}

inline std::vector<double> pack_params(const QaoaParams& params) {
    std::vector<double> x = params.gammas;
    x.insert(x.end(), params.betas.begin(), params.betas.end());
    return x;
}

// Multi-start Nelder-Mead over gamma in [0, pi], beta in [-pi/4, pi/4],
// followed by a compass polish of the winner. Restart 0 is a ramp schedule
// (gammas ascending, betas descending), restart 1 replicates the p=1
// optimum, the rest are seeded uniform draws. Ties keep the lowest restart.
inline TreeParamResult optimize_tree_params(int degree, int p, int restarts = 12,
                                            std::uint64_t seed = 1) {
    if (p == 0) return TreeParamResult{degree, 0, QaoaParams{}, 0.5,
                                       TreeParamResult::Source::Optimized};
    const auto box = parameter_box(p);
    const TreeEdgeEvaluator evaluator(degree, p);
    const Objective objective = [&](const std::vector<double>& x) {
        return evaluator(unpack_params(x, p));
    };

    std::vector<std::vector<double>> starts;
    {
        std::vector<double> ramp(2 * p);
        for (int i = 0; i < p; ++i) {
            const double t = p == 1 ? 0.0 : static_cast<double>(i) / (p - 1);
            ramp[i] = 0.35 + 0.65 * t;
            ramp[p + i] = 0.62 * (1.0 - t) + 0.12 * t;
        }
        starts.push_back(ramp);
    }
    {
        std::vector<double> flat(2 * p);
        for (int i = 0; i < p; ++i) {
            flat[i] = 0.6155;
            flat[p + i] = M_PI / 8;
        }
        starts.push_back(flat);
    }
    Rng rng(seed);
    while (static_cast<int>(starts.size()) < restarts) {
        std::vector<double> x(2 * p);
        for (int i = 0; i < 2 * p; ++i) x[i] = rng.uniform(box[i].first, box[i].second);
        starts.push_back(x);
    }

    OptimizeResult best;
    best.value = -1.0;
    NelderMeadOptions nm;
    nm.max_evals = 600 * p;
    for (const auto& start : starts) {
        const OptimizeResult r = nelder_mead_maximize(objective, start, box, nm);
        if (r.value > best.value) best = r;
    }
    best = compass_polish(objective, best.x, box);

    TreeParamResult result;
    result.degree = degree;
    result.depth = p;
    result.params = unpack_params(best.x, p);
    result.f_value = best.value;
    result.source = TreeParamResult::Source::Optimized;
    return result;
}

// --- parameter table file ----------------------------------------------------
// One record per line: D p f gamma_1..gamma_p beta_1..beta_p, angles in
// radians; '#' starts a comment. Entries that fit in the dense range are
// cross-checked against evaluate_tree_edge (warning only).

inline std::vector<TreeParamResult> parse_param_table(std::istream& in,
                                                      std::ostream& warnings = std::cerr) {
    std::vector<TreeParamResult> table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream row(line);
        TreeParamResult entry;
        entry.source = TreeParamResult::Source::TableFile;
        if (!(row >> entry.degree >> entry.depth >> entry.f_value))
            throw std::runtime_error("param table line " + std::to_string(line_no) +
                                     ": expected 'D p f'");
        if (entry.degree < 2 || entry.depth < 0)
            throw std::runtime_error("param table line " + std::to_string(line_no) +
                                     ": bad degree or depth");
        entry.params.gammas.resize(entry.depth);
        entry.params.betas.resize(entry.depth);
        for (int i = 0; i < 2 * entry.depth; ++i) {
            double angle = 0.0;
            if (!(row >> angle))
                throw std::runtime_error("param table line " + std::to_string(line_no) +
                                         ": entry D=" + std::to_string(entry.degree) +
                                         " p=" + std::to_string(entry.depth) +
                                         ": expected " + std::to_string(2 * entry.depth) +
                                         " angles");
            if (i < entry.depth)
                entry.params.gammas[i] = angle;
            else
                entry.params.betas[i - entry.depth] = angle;
        }
        double extra;
        if (row >> extra)
            throw std::runtime_error("param table line " + std::to_string(line_no) +
                                     ": trailing fields");
        if (entry.depth <= 2 && tree_vertex_count(entry.degree, entry.depth) <= 20) {
            const double f = evaluate_tree_edge(entry.degree, entry.depth, entry.params);
            if (std::abs(f - entry.f_value) > 1e-3)
                warnings << "warning: param table line " << line_no << ": stored f "
                         << entry.f_value << " differs from evaluated " << f << "\n";
        }
        table.push_back(std::move(entry));
    }
    return table;
}

inline std::vector<TreeParamResult> load_param_table(const std::string& path,
                                                     std::ostream& warnings = std::cerr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return parse_param_table(in, warnings);
}

inline void write_param_table(std::ostream& out, const std::vector<TreeParamResult>& table) {
    out << "# D p f gamma_1..gamma_p beta_1..beta_p\n";
    char buf[32];
    for (const auto& entry : table) {
        out << entry.degree << ' ' << entry.depth << ' ';
        std::snprintf(buf, sizeof(buf), "%.17g", entry.f_value);
        out << buf;
        for (double gm : entry.params.gammas) {
            std::snprintf(buf, sizeof(buf), " %.17g", gm);
            out << buf;
        }
        for (double bt : entry.params.betas) {
            std::snprintf(buf, sizeof(buf), " %.17g", bt);
            out << buf;
        }
        out << '\n';
    }
}

inline const TreeParamResult* find_table_entry(const std::vector<TreeParamResult>& table,
                                               int degree, int p) {
    for (const auto& entry : table)
        if (entry.degree == degree && entry.depth == p) return &entry;
    return nullptr;
}

}  // namespace qaoa
