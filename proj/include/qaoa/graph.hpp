#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qaoa/rng.hpp"

namespace qaoa {

using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

// Immutable undirected simple graph. Vertex ids are 0..n-1; edges are stored
// normalized (u < v) in ascending lexicographic order.
class Graph {
public:
    Graph() = default;

    Graph(int vertex_count, std::vector<Edge> edges)
        : vertex_count_(vertex_count), edges_(std::move(edges)) {
        if (vertex_count_ <= 0)
            throw std::invalid_argument("graph: vertex count must be positive");
        for (auto& [u, v] : edges_) {
            if (u == v) throw std::invalid_argument("graph: self-loop");
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= vertex_count_)
                throw std::invalid_argument("graph: vertex id out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("graph: duplicate edge");
        adjacency_.assign(vertex_count_, {});
        for (const auto& [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
    }

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
    int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

    bool has_edge(int u, int v) const {
        return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
    }

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

// A vertex bipartition as +-1 labels together with its cut size.
struct Cut {
    std::vector<int> assignment;  // entries +1 / -1
    int value = 0;
};

inline int cut_value(const Graph& g, const std::vector<int>& assignment) {
    if (static_cast<int>(assignment.size()) != g.vertex_count())
        throw std::invalid_argument("cut_value: assignment length mismatch");
    for (int z : assignment)
        if (z != 1 && z != -1)
            throw std::invalid_argument("cut_value: entries must be +-1");
    int cut = 0;
    for (const auto& [u, v] : g.edges())
        if (assignment[u] != assignment[v]) ++cut;
    return cut;
}

struct MaxCutResult {
    Cut best;
    std::uint64_t count_of_maxima = 0;  // maximizers with assignment[0] = +1
};

// Exhaustive MaxCut over 2^(n-1) assignments (vertex 0 pinned to +1), walked
// in Gray-code order with incremental cut updates.
inline MaxCutResult exact_maxcut(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 32) throw std::invalid_argument("exact_maxcut: n > 32");

    std::vector<int> assignment(n, 1);
    int value = 0;

    std::vector<int> best_assignment = assignment;
    int best_value = value;
    std::uint64_t count = 1;

    const std::uint64_t steps = (n >= 1) ? (std::uint64_t{1} << (n - 1)) : 1;
    for (std::uint64_t t = 1; t < steps; ++t) {
        const int v = 1 + std::countr_zero(t);  // Gray-code bit flip, vertices 1..n-1
        int cut_incident = 0;
        for (int u : g.neighbors(v))
            if (assignment[u] != assignment[v]) ++cut_incident;
        value += g.degree(v) - 2 * cut_incident;
        assignment[v] = -assignment[v];
        if (value > best_value) {
            best_value = value;
            best_assignment = assignment;
            count = 1;
        } else if (value == best_value) {
            ++count;
        }
    }
    return MaxCutResult{Cut{std::move(best_assignment), best_value}, count};
}

// Random regular graph via the configuration model: pair degree stubs
// uniformly, reject pairings with loops or multi-edges, retry.
inline Graph generate_random_regular(int n, int degree, std::uint64_t seed,
                                     int max_rounds = 2000) {
    if (n <= 0 || degree <= 0)
        throw std::invalid_argument("generate_random_regular: bad arguments");
    if ((static_cast<long long>(n) * degree) % 2 != 0)
        throw std::invalid_argument("generate_random_regular: n*degree must be even");
    if (n <= degree)
        throw std::invalid_argument("generate_random_regular: need n > degree");

    Rng rng(seed);
    std::vector<int> stubs(static_cast<std::size_t>(n) * degree);
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < degree; ++k) stubs[static_cast<std::size_t>(v) * degree + k] = v;

    for (int round = 0; round < max_rounds; ++round) {
        rng.shuffle(stubs);
        std::vector<Edge> edges;
        edges.reserve(stubs.size() / 2);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            if (stubs[i] == stubs[i + 1]) { ok = false; break; }
            edges.push_back(make_edge(stubs[i], stubs[i + 1]));
        }
        if (!ok) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, std::move(edges));
    }
    throw std::runtime_error("generate_random_regular: no simple pairing after " +
                             std::to_string(max_rounds) + " attempts");
}

// Bipartite variant: sides {0..n/2-1} and {n/2..n-1}, stubs matched across.
inline Graph generate_random_bipartite_regular(int n, int degree, std::uint64_t seed,
                                               int max_rounds = 2000) {
    if (n <= 0 || degree <= 0)
        throw std::invalid_argument("generate_random_bipartite_regular: bad arguments");
    if (n % 2 != 0)
        throw std::invalid_argument("generate_random_bipartite_regular: n must be even");
    const int side = n / 2;
    if (side < degree)
        throw std::invalid_argument("generate_random_bipartite_regular: side size < degree");

    Rng rng(seed);
    std::vector<int> right_stubs(static_cast<std::size_t>(side) * degree);
    for (int v = 0; v < side; ++v)
        for (int k = 0; k < degree; ++k)
            right_stubs[static_cast<std::size_t>(v) * degree + k] = side + v;

    for (int round = 0; round < max_rounds; ++round) {
        rng.shuffle(right_stubs);
        std::vector<Edge> edges;
        edges.reserve(right_stubs.size());
        for (std::size_t i = 0; i < right_stubs.size(); ++i)
            edges.push_back(make_edge(static_cast<int>(i) / degree, right_stubs[i]));
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, std::move(edges));
    }
    throw std::runtime_error("generate_random_bipartite_regular: no simple pairing after " +
                             std::to_string(max_rounds) + " attempts");
}

// Post-selects regular instances whose maximum cut is unique up to global
// complementation.
inline Graph generate_unique_maxcut_regular(int n, int degree, std::uint64_t seed,
                                            int max_attempts, bool bipartite = false) {
    if (n > 32)
        throw std::invalid_argument("generate_unique_maxcut_regular: n > 32");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Graph g = bipartite
                      ? generate_random_bipartite_regular(n, degree, seed + attempt)
                      : generate_random_regular(n, degree, seed + attempt);
        if (exact_maxcut(g).count_of_maxima == 1) return g;
    }
    throw std::runtime_error("generate_unique_maxcut_regular: no unique-maxcut instance in " +
                             std::to_string(max_attempts) + " attempts");
}

// Shortest cycle length; nullopt for forests. BFS from every vertex.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.vertex_count();
    int best = -1;
    std::vector<int> dist(n), parent(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            const int a = queue.front();
            queue.pop_front();
            for (int b : g.neighbors(a)) {
                if (dist[b] < 0) {
                    dist[b] = dist[a] + 1;
                    parent[b] = a;
                    queue.push_back(b);
                } else if (parent[a] != b && a < b) {
                    const int cycle = dist[a] + dist[b] + 1;
                    if (best < 0 || cycle < best) best = cycle;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

// Radius-p ball around an edge with the induced subgraph. Subgraph ids 0 and
// 1 are the center endpoints, in center_edge order; vertex_map sends subgraph
// ids back to original ids.
struct EdgeNeighborhood {
    Edge center_edge;
    Graph subgraph;
    std::vector<int> vertex_map;
    int radius = 0;
};

inline EdgeNeighborhood edge_neighborhood(const Graph& g, Edge edge, int p) {
    edge = make_edge(edge.first, edge.second);
    if (!g.has_edge(edge.first, edge.second))
        throw std::invalid_argument("edge_neighborhood: edge not in graph");
    if (p < 0) throw std::invalid_argument("edge_neighborhood: negative radius");

    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<int> order{edge.first, edge.second};
    dist[edge.first] = 0;
    dist[edge.second] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int a = order[head];
        if (dist[a] == p) continue;
        for (int b : g.neighbors(a)) {
            if (dist[b] < 0) {
                dist[b] = dist[a] + 1;
                order.push_back(b);
            }
        }
    }

    std::vector<int> to_sub(g.vertex_count(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) to_sub[order[i]] = static_cast<int>(i);
    std::vector<Edge> sub_edges;
    for (const auto& [u, v] : g.edges())
        if (to_sub[u] >= 0 && to_sub[v] >= 0)
            sub_edges.push_back(make_edge(to_sub[u], to_sub[v]));

    EdgeNeighborhood result;
    result.center_edge = edge;
    result.subgraph = Graph(static_cast<int>(order.size()), std::move(sub_edges));
    result.vertex_map = std::move(order);
    result.radius = p;
    return result;
}

// D-regular tree of radius p around a central edge: both endpoints carry D-1
// child subtrees down to depth p. Leaves have degree 1, internal vertices D.
inline EdgeNeighborhood build_tree_neighborhood(int degree, int p) {
    if (degree < 2) throw std::invalid_argument("build_tree_neighborhood: degree >= 2 required");
    if (p < 0) throw std::invalid_argument("build_tree_neighborhood: negative radius");

    std::vector<Edge> edges{{0, 1}};
    std::vector<int> frontier{0, 1};
    int next_id = 2;
    for (int depth = 0; depth < p; ++depth) {
        std::vector<int> next_frontier;
        for (int v : frontier) {
            for (int c = 0; c < degree - 1; ++c) {
                edges.push_back(make_edge(v, next_id));
                next_frontier.push_back(next_id);
                ++next_id;
            }
        }
        frontier = std::move(next_frontier);
    }

    EdgeNeighborhood result;
    result.center_edge = {0, 1};
    result.subgraph = Graph(next_id, std::move(edges));
    result.vertex_map.resize(next_id);
    for (int i = 0; i < next_id; ++i) result.vertex_map[i] = i;
    result.radius = p;
    return result;
}

// --- graph file format -----------------------------------------------------
// First line "n m", then m lines "i j" with 0-based ids, i < j, ascending
// lexicographic order. The reader tolerates '#' comments and blank lines.

inline void write_graph(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_graph(out, g);
}

inline Graph read_graph(std::istream& in) {
    std::string line;
    auto next_data_line = [&](std::string& dst) {
        while (std::getline(in, dst)) {
            const auto pos = dst.find('#');
            if (pos != std::string::npos) dst.erase(pos);
            if (dst.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_data_line(line)) throw std::runtime_error("graph file: missing header");
    std::istringstream header(line);
    int n = 0, m = 0;
    if (!(header >> n >> m)) throw std::runtime_error("graph file: malformed header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int k = 0; k < m; ++k) {
        if (!next_data_line(line))
            throw std::runtime_error("graph file: expected " + std::to_string(m) + " edges");
        std::istringstream row(line);
        int u = 0, v = 0;
        if (!(row >> u >> v))
            throw std::runtime_error("graph file: malformed edge line: " + line);
        edges.push_back(make_edge(u, v));
    }
    return Graph(n, std::move(edges));
}

inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_graph(in);
}

// FNV-1a over the canonical edge list; used to tag result records.
inline std::uint64_t graph_hash(const Graph& g) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(g.vertex_count()));
    for (const auto& [u, v] : g.edges()) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
    }
    return h;
}

inline std::string graph_hash_hex(const Graph& g) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(graph_hash(g)));
    return std::string(buf);
}

}  // namespace qaoa
