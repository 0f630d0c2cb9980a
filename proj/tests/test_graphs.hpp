#pragma once

// Named small graphs used as fixtures across the test suites.

#include <vector>

#include "qaoa/graph.hpp"

namespace testgraphs {

inline qaoa::Graph from_lcf(int n, const std::vector<int>& pattern) {
    std::vector<qaoa::Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(qaoa::make_edge(i, (i + 1) % n));
    for (int i = 0; i < n; ++i) {
        const int jump = pattern[i % pattern.size()];
        const int j = ((i + jump) % n + n) % n;
        auto e = qaoa::make_edge(i, j);
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
    return qaoa::Graph(n, edges);
}

inline qaoa::Graph triangle() { return qaoa::Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline qaoa::Graph single_edge() { return qaoa::Graph(2, {{0, 1}}); }

inline qaoa::Graph k4() {
    return qaoa::Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

inline qaoa::Graph k33() {
    std::vector<qaoa::Edge> edges;
    for (int u = 0; u < 3; ++u)
        for (int v = 3; v < 6; ++v) edges.push_back({u, v});
    return qaoa::Graph(6, edges);
}

inline qaoa::Graph cycle(int n) {
    std::vector<qaoa::Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(qaoa::make_edge(i, (i + 1) % n));
    return qaoa::Graph(n, edges);
}

inline qaoa::Graph path(int n) {
    std::vector<qaoa::Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return qaoa::Graph(n, edges);
}

// 3-regular, girth 5.
inline qaoa::Graph petersen() {
    std::vector<qaoa::Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.push_back(qaoa::make_edge(i, (i + 1) % 5));
        edges.push_back(qaoa::make_edge(5 + i, 5 + (i + 2) % 5));
        edges.push_back(qaoa::make_edge(i, i + 5));
    }
    return qaoa::Graph(10, edges);
}

// 3-regular, girth 6 (bipartite, edge-transitive).
inline qaoa::Graph heawood() { return from_lcf(14, {5, -5}); }

// 3-regular, girth 7.
inline qaoa::Graph mcgee() { return from_lcf(24, {12, 7, -7}); }

}  // namespace testgraphs
