#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qaoa/graph.hpp"
#include "qaoa/params.hpp"
#include "qaoa/statevector.hpp"
#include "qaoa/tensor.hpp"

namespace qaoa {

// One per-edge evaluation unit: the radius-p ball around an edge, the mixer
// restricted to it, and the depth-p schedule. The observable is Z_i Z_j on
// the mapped center edge (subgraph ids 0 and 1).
struct NeighborhoodTask {
    EdgeNeighborhood neighborhood;
    MixerSpec local_mixer;
    QaoaParams params;

    void validate() const {
        params.validate();
        if (local_mixer.kind == MixerSpec::Kind::Rotated &&
            static_cast<int>(local_mixer.angles.size()) != neighborhood.subgraph.vertex_count())
            throw std::invalid_argument("task: local mixer angle count mismatch");
    }
};

inline NeighborhoodTask make_task(const Graph& g, const MixerSpec& mixer,
                                  const QaoaParams& params, Edge edge) {
    NeighborhoodTask task;
    task.neighborhood = edge_neighborhood(g, edge, params.depth());
    if (mixer.kind == MixerSpec::Kind::Standard) {
        task.local_mixer = MixerSpec::standard();
    } else {
        std::vector<double> local(task.neighborhood.vertex_map.size());
        for (std::size_t s = 0; s < local.size(); ++s)
            local[s] = mixer.angles.at(task.neighborhood.vertex_map[s]);
        task.local_mixer = MixerSpec::rotated(std::move(local));
    }
    task.params = params;
    return task;
}

enum class EdgeBackend { Dense, TensorNetwork };

inline constexpr double kDefaultContractionBudget = 1073741824.0;  // 2^30 scalar ops

// --- sandwich network builder ----------------------------------------------
// <phi| U^dag Z_i Z_j U |phi> as a closed network: a ket wire and a
// conjugated bra wire per qubit, rank-2 bond splits for the diagonal cost
// gates, and Z insertions on the two center wires at the turnaround.

namespace lc_detail {

struct GateFactors {
    Complex f0, f1;  // ket-side factor for s = +1 basis... see below
};

// e^{-i g (1 - s_u s_v)/2} = sum_k f_k(s_u) g_k(s_v) with a dim-2 bond.
// f_0(s) = sqrt(cos(g/2)), f_1(s) = sqrt(i sin(g/2)) * s, and the partner
// side carries the extra phase e^{-i g/2}.
inline void cost_bond_factors(double gamma, Complex out_f[2], Complex out_g[2]) {
    const Complex c = std::sqrt(Complex(std::cos(gamma / 2.0), 0.0));
    const Complex d = std::sqrt(Complex(0.0, 1.0) * std::sin(gamma / 2.0));
    const Complex phase = std::polar(1.0, -gamma / 2.0);
    out_f[0] = c;
    out_f[1] = d;
    out_g[0] = c * phase;
    out_g[1] = d * phase;
}

// Chain tensor on a wire: indices {in, out, bond}; diagonal in (in, out) with
// factor(k, s). sign(s): +1 for bit 0, -1 for bit 1.
inline Tensor chain_tensor(int in, int out, int bond, const Complex f[2], bool signed_slot,
                           bool conjugate) {
    Tensor t;
    t.indices = {in, out, bond};
    t.data.assign(8, Complex(0, 0));
    for (int s = 0; s < 2; ++s) {
        const double sign = s == 0 ? 1.0 : -1.0;
        Complex v0 = f[0];
        Complex v1 = signed_slot ? f[1] * sign : f[1];
        if (conjugate) {
            v0 = std::conj(v0);
            v1 = std::conj(v1);
        }
        t.data[(s * 2 + s) * 2 + 0] = v0;
        t.data[(s * 2 + s) * 2 + 1] = v1;
    }
    return t;
}

inline Tensor vector_tensor(int leg, Complex a0, Complex a1) {
    Tensor t;
    t.indices = {leg};
    t.data = {a0, a1};
    return t;
}

inline Tensor matrix_tensor(int out, int in, const detail::OneQubitGate& g, bool conjugate) {
    Tensor t;
    t.indices = {out, in};
    t.data = {g.m00, g.m01, g.m10, g.m11};
    if (conjugate)
        for (auto& x : t.data) x = std::conj(x);
    return t;
}

}  // namespace lc_detail

inline TensorNetwork build_task_network(const NeighborhoodTask& task) {
    task.validate();
    const Graph& sub = task.neighborhood.subgraph;
    const int m = sub.vertex_count();
    const int p = task.params.depth();

    // Distance from the center edge. A gate of build-layer k only acts
    // within distance p-k-1 in the Heisenberg picture (outer bra/ket pairs
    // cancel), so everything farther is dropped; the dense backend computes
    // the same number with the full circuit.
    std::vector<int> dist(m, -1);
    dist[0] = dist[1] = 0;
    {
        std::vector<int> queue{0, 1};
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (int b : sub.neighbors(queue[head]))
                if (dist[b] < 0) {
                    dist[b] = dist[queue[head]] + 1;
                    queue.push_back(b);
                }
    }

    TensorNetwork net;
    // p=0: only the center wires matter, every other qubit contracts to 1.
    std::vector<int> active;
    if (p == 0) {
        active = {0, 1};
    } else {
        active.resize(m);
        for (int q = 0; q < m; ++q) active[q] = q;
    }

    std::vector<int> ket_cur(m, -1), bra_cur(m, -1);
    for (int q : active) {
        const double theta = task.local_mixer.theta(q);
        const int kleg = net.fresh_index(2);
        const int bleg = net.fresh_index(2);
        net.tensors.push_back(lc_detail::vector_tensor(
            kleg, Complex(std::cos(theta / 2), 0), Complex(std::sin(theta / 2), 0)));
        net.tensors.push_back(lc_detail::vector_tensor(
            bleg, Complex(std::cos(theta / 2), 0), Complex(std::sin(theta / 2), 0)));
        ket_cur[q] = kleg;
        bra_cur[q] = bleg;
    }

    for (int layer = 0; layer < p; ++layer) {
        const int reach = p - layer - 1;
        Complex f[2], g[2];
        lc_detail::cost_bond_factors(task.params.gammas[layer], f, g);
        for (const auto& [u, v] : sub.edges()) {
            if (std::min(dist[u], dist[v]) > reach) continue;
            const int ket_bond = net.fresh_index(2);
            const int ket_u_out = net.fresh_index(2);
            const int ket_v_out = net.fresh_index(2);
            net.tensors.push_back(
                lc_detail::chain_tensor(ket_cur[u], ket_u_out, ket_bond, f, true, false));
            net.tensors.push_back(
                lc_detail::chain_tensor(ket_cur[v], ket_v_out, ket_bond, g, true, false));
            ket_cur[u] = ket_u_out;
            ket_cur[v] = ket_v_out;

            const int bra_bond = net.fresh_index(2);
            const int bra_u_out = net.fresh_index(2);
            const int bra_v_out = net.fresh_index(2);
            net.tensors.push_back(
                lc_detail::chain_tensor(bra_cur[u], bra_u_out, bra_bond, f, true, true));
            net.tensors.push_back(
                lc_detail::chain_tensor(bra_cur[v], bra_v_out, bra_bond, g, true, true));
            bra_cur[u] = bra_u_out;
            bra_cur[v] = bra_v_out;
        }
        for (int q = 0; q < m; ++q) {
            if (dist[q] > reach) continue;
            const auto gate =
                detail::mixer_gate(task.local_mixer.theta(q), task.params.betas[layer]);
            const int ket_out = net.fresh_index(2);
            net.tensors.push_back(lc_detail::matrix_tensor(ket_out, ket_cur[q], gate, false));
            ket_cur[q] = ket_out;
            const int bra_out = net.fresh_index(2);
            net.tensors.push_back(lc_detail::matrix_tensor(bra_out, bra_cur[q], gate, true));
            bra_cur[q] = bra_out;
        }
    }

    // Turnaround: identify ket and bra tops, inserting Z on the center wires.
    for (int q : active) {
        if (q == 0 || q == 1) {
            Tensor z;
            z.indices = {ket_cur[q], bra_cur[q]};
            z.data = {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)};
            net.tensors.push_back(z);
        } else {
            // splice: rename the bra top index to the ket top index
            for (auto& t : net.tensors)
                for (auto& idx : t.indices)
                    if (idx == bra_cur[q]) idx = ket_cur[q];
        }
    }
    return net;
}

inline ContractionPlan plan_contraction(const NeighborhoodTask& task) {
    return plan_network(build_task_network(task));
}

// <Z_i Z_j> of the locally evolved state. A precomputed plan may be passed
// when many tasks share one network structure (optimizer loops).
inline double edge_expectation(const NeighborhoodTask& task, EdgeBackend backend,
                               double budget = kDefaultContractionBudget,
                               const ContractionPlan* reuse_plan = nullptr) {
    task.validate();
    const Graph& sub = task.neighborhood.subgraph;
    if (backend == EdgeBackend::Dense) {
        if (sub.vertex_count() > kMaxDenseQubits)
            throw std::invalid_argument("edge_expectation: neighborhood of " +
                                        std::to_string(sub.vertex_count()) +
                                        " vertices exceeds the dense backend cap");
        const StateVector state = run_qaoa(sub, task.local_mixer, task.params);
        return 1.0 - 2.0 * edge_cut_probability(state, 0, 1);
    }
    const TensorNetwork net = build_task_network(task);
    ContractionPlan plan = reuse_plan ? *reuse_plan : plan_network(net);
    if (!reuse_plan && plan.cost_estimate > budget) {
        // one harder planning pass before giving up
        ContractionPlan retry = plan_network(net, 16);
        if (retry.cost_estimate < plan.cost_estimate) plan = std::move(retry);
    }
    if (plan.cost_estimate > budget) throw BudgetExceeded(plan.cost_estimate);
    const Complex value = execute_plan(net, plan);
    return value.real();
}

// --- canonical keys ----------------------------------------------------------
// Canonical form of (subgraph, marked center edge, rounded angles, rounded
// schedule) by colour refinement with exhaustive tie-breaking, so isomorphic
// tasks collide and non-isomorphic ones do not.

struct CanonicalKey {
    std::string certificate;
    bool operator==(const CanonicalKey& other) const = default;
};

namespace lc_detail {

inline long long round_angle(double x, int precision) {
    return std::llround(x * std::pow(10.0, precision));
}

// Exact canonical encoding for tree subgraphs: recursive sorted subtree
// strings rooted at the center edge. Linear-ish and immune to the sibling
// symmetry that makes individualization search exponential on large trees.
inline std::string tree_certificate(const Graph& g, int v, int parent,
                                    const std::vector<long long>& angle_keys) {
    std::vector<std::string> children;
    for (int u : g.neighbors(v))
        if (u != parent) children.push_back(tree_certificate(g, u, v, angle_keys));
    std::sort(children.begin(), children.end());
    std::string s = "(" + std::to_string(angle_keys[v]);
    for (const auto& c : children) s += c;
    s += ')';
    return s;
}

// Refine colours by (own colour, sorted neighbour colours) until stable.
inline std::vector<int> refine_colors(const Graph& g, std::vector<int> color) {
    const int n = g.vertex_count();
    while (true) {
        std::vector<std::pair<std::vector<int>, int>> signature(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig{color[v]};
            std::vector<int> nb;
            for (int u : g.neighbors(v)) nb.push_back(color[u]);
            std::sort(nb.begin(), nb.end());
            sig.insert(sig.end(), nb.begin(), nb.end());
            signature[v] = {std::move(sig), v};
        }
        std::vector<std::pair<std::vector<int>, int>> sorted = signature;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> next(n);
        int classes = 0;
        for (int k = 0; k < n; ++k) {
            if (k > 0 && sorted[k].first != sorted[k - 1].first) ++classes;
            next[sorted[k].second] = classes;
        }
        if (next == color) return color;
        color = std::move(next);
    }
}

inline std::string certificate_for_order(const Graph& g, const std::vector<int>& order,
                                         const std::vector<long long>& angle_keys) {
    std::vector<int> position(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = static_cast<int>(k);
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges()) edges.push_back(make_edge(position[u], position[v]));
    std::sort(edges.begin(), edges.end());
    std::string s;
    for (const auto& [u, v] : edges) {
        s += std::to_string(u);
        s += ',';
        s += std::to_string(v);
        s += ';';
    }
    s += '|';
    for (int v : order) {
        s += std::to_string(angle_keys[v]);
        s += ',';
    }
    return s;
}

// Individualization-refinement search for the lexicographically smallest
// certificate, exhaustive over refinement-stable cells. The work budget
// counts refinement passes; blowing it means the caller falls back to a
// non-shared key rather than hanging on a pathologically symmetric input.
inline bool canonical_search(const Graph& g, const std::vector<int>& color,
                             const std::vector<long long>& angle_keys,
                             std::optional<std::string>& best, long long& refine_budget) {
    if (--refine_budget < 0) return false;
    const int n = g.vertex_count();
    int cell_color = -1;
    std::vector<int> cell;
    for (int c = 0;; ++c) {
        cell.clear();
        for (int v = 0; v < n; ++v)
            if (color[v] == c) cell.push_back(v);
        if (cell.empty()) break;
        if (cell.size() > 1) {
            cell_color = c;
            break;
        }
    }
    if (cell_color < 0) {
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[color[v]] = v;
        std::string cert = certificate_for_order(g, order, angle_keys);
        if (!best || cert < *best) best = std::move(cert);
        return true;
    }
    for (int v : cell) {
        std::vector<int> refined = color;
        for (int w = 0; w < n; ++w)
            if (refined[w] >= cell_color && w != v) refined[w] += 1;
        if (!canonical_search(g, refine_colors(g, refined), angle_keys, best, refine_budget))
            return false;
    }
    return true;
}

}  // namespace lc_detail

inline CanonicalKey canonical_key(const NeighborhoodTask& task, int angle_precision = 9) {
    task.validate();
    const Graph& sub = task.neighborhood.subgraph;
    const int n = sub.vertex_count();

    std::vector<long long> angle_keys(n);
    for (int v = 0; v < n; ++v)
        angle_keys[v] = lc_detail::round_angle(task.local_mixer.theta(v), angle_precision);

    std::string head = "p=" + std::to_string(task.params.depth()) + ";";
    for (int l = 0; l < task.params.depth(); ++l) {
        head += std::to_string(lc_detail::round_angle(task.params.gammas[l], angle_precision));
        head += ',';
        head += std::to_string(lc_detail::round_angle(task.params.betas[l], angle_precision));
        head += ';';
    }
    head += "n=" + std::to_string(n) + ";";

    if (sub.edge_count() == n - 1) {
        // tree ball: exact canonical form without any search
        std::string a = lc_detail::tree_certificate(sub, 0, 1, angle_keys);
        std::string b = lc_detail::tree_certificate(sub, 1, 0, angle_keys);
        if (b < a) std::swap(a, b);
        return CanonicalKey{head + "T" + a + b};
    }

    // initial colours: (is-center-endpoint, degree, rounded angle)
    std::vector<std::pair<std::vector<long long>, int>> seed(n);
    for (int v = 0; v < n; ++v)
        seed[v] = {{v <= 1 ? 0 : 1, sub.degree(v), angle_keys[v]}, v};
    std::vector<std::pair<std::vector<long long>, int>> sorted = seed;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> color(n);
    int classes = 0;
    for (int k = 0; k < n; ++k) {
        if (k > 0 && sorted[k].first != sorted[k - 1].first) ++classes;
        color[sorted[k].second] = classes;
    }

    std::optional<std::string> best;
    long long refine_budget = 200000;
    const bool complete = lc_detail::canonical_search(
        sub, lc_detail::refine_colors(sub, color), angle_keys, best, refine_budget);
    if (!complete) {
        // sound but unshared: unique key, so the memo never conflates tasks
        static std::atomic<std::uint64_t> nonce{0};
        return CanonicalKey{head + "U" + std::to_string(nonce.fetch_add(1))};
    }
    return CanonicalKey{head + "G" + *best};
}

// --- whole-graph expectation --------------------------------------------------

struct LightconeStats {
    int cache_hits = 0;
    int cache_misses = 0;
};

struct EdgeDumpRow {
    Edge edge;
    double expectation = 0.0;
    EdgeBackend backend = EdgeBackend::Dense;
    bool cache_hit = false;
    double plan_cost = 0.0;
};

// Sum of per-edge light-cone terms: |E|/2 - (1/2) sum <Z_i Z_j>. With
// memoize on, per-edge values are cached under the canonical key of the
// task. The total is accumulated in edge-list order regardless.
inline ExpectationReport graph_expectation(const Graph& g, const MixerSpec& mixer,
                                           const QaoaParams& params, EdgeBackend backend,
                                           bool memoize = true,
                                           double budget = kDefaultContractionBudget,
                                           LightconeStats* stats = nullptr,
                                           std::vector<EdgeDumpRow>* dump = nullptr,
                                           int angle_precision = 9) {
    params.validate();
    detail::check_mixer(mixer, g.vertex_count());

    std::map<std::string, double> cache;
    ExpectationReport report;
    report.per_edge.reserve(g.edges().size());
    double total = 0.0;
    for (const auto& edge : g.edges()) {
        const NeighborhoodTask task = make_task(g, mixer, params, edge);
        double zz = 0.0;
        bool hit = false;
        double plan_cost = 0.0;
        if (memoize) {
            const CanonicalKey key = canonical_key(task, angle_precision);
            auto it = cache.find(key.certificate);
            if (it != cache.end()) {
                zz = it->second;
                hit = true;
            } else {
                zz = edge_expectation(task, backend, budget);
                cache.emplace(key.certificate, zz);
            }
        } else {
            zz = edge_expectation(task, backend, budget);
        }
        if (stats) {
            if (hit) ++stats->cache_hits;
            else ++stats->cache_misses;
        }
        if (dump) {
            if (backend == EdgeBackend::TensorNetwork && !hit)
                plan_cost = plan_contraction(task).cost_estimate;
            dump->push_back(EdgeDumpRow{edge, zz, backend, hit, plan_cost});
        }
        const double term = 0.5 * (1.0 - zz);
        report.per_edge.emplace_back(edge, term);
        total += term;
    }
    report.total_expectation = total;
    report.cut_fraction = g.edge_count() > 0 ? total / g.edge_count() : 0.0;
    return report;
}

inline void write_edge_dump_csv(const std::string& path, const std::vector<EdgeDumpRow>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "u,v,expectation,backend,cache_hit,plan_cost\n");
    for (const auto& row : rows)
        std::fprintf(f, "%d,%d,%.17g,%s,%d,%.17g\n", row.edge.first, row.edge.second,
                     row.expectation, row.backend == EdgeBackend::Dense ? "dense" : "tn",
                     row.cache_hit ? 1 : 0, row.plan_cost);
    std::fclose(f);
}

}  // namespace qaoa
