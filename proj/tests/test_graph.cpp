#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include "qaoa/graph.hpp"
#include "test_graphs.hpp"

using namespace qaoa;

namespace {

// Independent oracle: try all 2^n assignments, counting cut edges directly.
std::pair<int, std::uint64_t> brute_maxcut(const Graph& g) {
    const int n = g.vertex_count();
    int best = -1;
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (mask & 1) continue;  // pin vertex 0 to +1 (bit 0 clear)
        int cut = 0;
        for (const auto& [u, v] : g.edges())
            cut += ((mask >> u) & 1) != ((mask >> v) & 1);
        if (cut > best) {
            best = cut;
            count = 1;
        } else if (cut == best) {
            ++count;
        }
    }
    return {best, count};
}

std::vector<int> random_assignment(Rng& rng, int n) {
    std::vector<int> a(n);
    for (int& x : a) x = rng.uniform() < 0.5 ? 1 : -1;
    return a;
}

bool is_tree(const Graph& g) {
    return g.edge_count() == g.vertex_count() - 1 && !girth(g).has_value();
}

}  // namespace

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
    const Graph g(3, {{2, 1}, {0, 1}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(g.degree(1) == 2);
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("cut_value counts cut edges") {
    CHECK(cut_value(testgraphs::single_edge(), {1, -1}) == 1);
    CHECK(cut_value(testgraphs::k4(), {1, 1, 1, 1}) == 0);
    CHECK(cut_value(testgraphs::k4(), {1, 1, -1, -1}) == 4);
    CHECK_THROWS_AS(cut_value(testgraphs::k4(), {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(cut_value(testgraphs::k4(), {1, 1, 2, 1}), std::invalid_argument);
}

TEST_CASE("cut_value is invariant under complementation") {
    Rng rng(11);
    const Graph g = generate_random_regular(12, 3, 5);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_assignment(rng, 12);
        auto b = a;
        for (int& x : b) x = -x;
        CHECK(cut_value(g, a) == cut_value(g, b));
    }
}

TEST_CASE("exact_maxcut matches brute force") {
    CHECK(exact_maxcut(testgraphs::triangle()).best.value == 2);
    CHECK(exact_maxcut(testgraphs::triangle()).count_of_maxima == 3);

    const auto k4 = exact_maxcut(testgraphs::k4());
    const auto k4_oracle = brute_maxcut(testgraphs::k4());
    CHECK(k4.best.value == k4_oracle.first);
    CHECK(k4.count_of_maxima == k4_oracle.second);
    CHECK(k4.best.value == 4);
    CHECK(k4.count_of_maxima == 3);

    const auto k33 = exact_maxcut(testgraphs::k33());
    CHECK(k33.best.value == 9);
    CHECK(k33.count_of_maxima == 1);

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = generate_random_regular(12, 3, seed);
        const auto fast = exact_maxcut(g);
        const auto slow = brute_maxcut(g);
        CHECK(fast.best.value == slow.first);
        CHECK(fast.count_of_maxima == slow.second);
        CHECK(cut_value(g, fast.best.assignment) == fast.best.value);
    }
}

TEST_CASE("exact_maxcut is invariant under relabeling") {
    const Graph g = generate_random_regular(14, 3, 3);
    Rng rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> perm(14);
        for (int i = 0; i < 14; ++i) perm[i] = i;
        rng.shuffle(perm);
        std::vector<Edge> edges;
        for (const auto& [u, v] : g.edges()) edges.push_back(make_edge(perm[u], perm[v]));
        const Graph h(14, edges);
        CHECK(exact_maxcut(h).best.value == exact_maxcut(g).best.value);
    }
}

TEST_CASE("exact_maxcut rejects oversized graphs") {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < 40; ++i) edges.push_back({i, i + 1});
    CHECK_THROWS_AS(exact_maxcut(Graph(40, edges)), std::invalid_argument);
}

TEST_CASE("random regular generator") {
    SECTION("K4 is forced at n=4, degree 3") {
        for (std::uint64_t seed : {0ull, 1ull, 42ull})
            CHECK(generate_random_regular(4, 3, seed).edges() == testgraphs::k4().edges());
    }
    SECTION("deterministic per seed") {
        CHECK(generate_random_regular(16, 3, 7).edges() ==
              generate_random_regular(16, 3, 7).edges());
    }
    SECTION("rejects infeasible input") {
        CHECK_THROWS_AS(generate_random_regular(5, 3, 0), std::invalid_argument);
        CHECK_THROWS_AS(generate_random_regular(3, 3, 0), std::invalid_argument);
    }
    SECTION("degrees are uniform") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const Graph g = generate_random_regular(20, 3, seed);
            for (int v = 0; v < 20; ++v) CHECK(g.degree(v) == 3);
        }
    }
}

TEST_CASE("random bipartite regular generator") {
    SECTION("K33 is forced at n=6, degree 3") {
        CHECK(generate_random_bipartite_regular(6, 3, 123).edges() == testgraphs::k33().edges());
    }
    SECTION("maxcut equals edge count") {
        const Graph g = generate_random_bipartite_regular(16, 3, 2);
        CHECK(g.edge_count() == 24);
        CHECK(exact_maxcut(g).best.value == 24);
        for (int v = 0; v < 16; ++v) CHECK(g.degree(v) == 3);
    }
    SECTION("rejects side smaller than degree") {
        CHECK_THROWS_AS(generate_random_bipartite_regular(4, 3, 0), std::invalid_argument);
    }
}

TEST_CASE("generate_unique_maxcut_regular post-selects a single best cut") {
    const Graph g = generate_unique_maxcut_regular(16, 3, 7, 200);
    CHECK(exact_maxcut(g).count_of_maxima == 1);

    const Graph b = generate_unique_maxcut_regular(6, 3, 0, 10, true);
    CHECK(b.edges() == testgraphs::k33().edges());

    CHECK_THROWS_AS(generate_unique_maxcut_regular(16, 3, 7, 0), std::runtime_error);
}

TEST_CASE("girth") {
    CHECK(girth(testgraphs::triangle()) == 3);
    CHECK(girth(testgraphs::k33()) == 4);
    CHECK(girth(testgraphs::petersen()) == 5);
    CHECK(girth(testgraphs::heawood()) == 6);
    CHECK(girth(testgraphs::mcgee()) == 7);
    CHECK(girth(testgraphs::cycle(9)) == 9);
    CHECK_FALSE(girth(testgraphs::path(6)).has_value());
    CHECK_FALSE(girth(build_tree_neighborhood(3, 4).subgraph).has_value());
}

TEST_CASE("edge_neighborhood") {
    const Graph pet = testgraphs::petersen();

    SECTION("radius 0 keeps only the endpoints") {
        const auto nb = edge_neighborhood(pet, {0, 1}, 0);
        CHECK(nb.subgraph.vertex_count() == 2);
        CHECK(nb.subgraph.edge_count() == 1);
        CHECK(nb.vertex_map == std::vector<int>{0, 1});
    }
    SECTION("radius 1 in a girth-5 cubic graph is the 6-vertex tree") {
        for (const auto& e : pet.edges()) {
            const auto nb = edge_neighborhood(pet, e, 1);
            CHECK(nb.subgraph.vertex_count() == 6);
            CHECK(is_tree(nb.subgraph));
        }
    }
    SECTION("large radius returns the whole graph") {
        const auto nb = edge_neighborhood(pet, {0, 1}, 10);
        CHECK(nb.subgraph.vertex_count() == 10);
        CHECK(nb.subgraph.edge_count() == 15);
    }
    SECTION("rejects non-edges") {
        CHECK_THROWS_AS(edge_neighborhood(pet, {0, 2}, 1), std::invalid_argument);
    }
    SECTION("radius p+1 neighborhood contains the radius-p one") {
        for (int p = 0; p < 3; ++p) {
            const auto small = edge_neighborhood(pet, {0, 5}, p);
            const auto large = edge_neighborhood(pet, {0, 5}, p + 1);
            std::set<int> large_vertices(large.vertex_map.begin(), large.vertex_map.end());
            for (int v : small.vertex_map) CHECK(large_vertices.count(v) == 1);
            std::set<Edge> large_edges;
            for (const auto& [u, v] : large.subgraph.edges())
                large_edges.insert(make_edge(large.vertex_map[u], large.vertex_map[v]));
            for (const auto& [u, v] : small.subgraph.edges())
                CHECK(large_edges.count(make_edge(small.vertex_map[u], small.vertex_map[v])) == 1);
        }
    }
    SECTION("girth >= 2p+3 makes every radius-p ball a tree") {
        for (const auto& e : pet.edges())
            CHECK(is_tree(edge_neighborhood(pet, e, 1).subgraph));
        for (const auto& e : testgraphs::mcgee().edges())
            CHECK(is_tree(edge_neighborhood(testgraphs::mcgee(), e, 2).subgraph));
    }
}

TEST_CASE("build_tree_neighborhood") {
    const auto t0 = build_tree_neighborhood(3, 0);
    CHECK(t0.subgraph.vertex_count() == 2);
    CHECK(t0.subgraph.edge_count() == 1);

    const auto t1 = build_tree_neighborhood(3, 1);
    CHECK(t1.subgraph.vertex_count() == 6);
    CHECK(is_tree(t1.subgraph));
    CHECK(t1.subgraph.degree(0) == 3);
    CHECK(t1.subgraph.degree(5) == 1);

    const auto t11 = build_tree_neighborhood(3, 11);
    CHECK(t11.subgraph.vertex_count() == 8190);
    CHECK(t11.subgraph.edge_count() == 8189);

    for (int p = 0; p <= 6; ++p)
        CHECK(build_tree_neighborhood(3, p).subgraph.vertex_count() ==
              2 * ((1 << (p + 1)) - 1));

    const auto d2 = build_tree_neighborhood(2, 3);
    CHECK(d2.subgraph.vertex_count() == 8);  // path
    CHECK(is_tree(d2.subgraph));
}

TEST_CASE("graph file round trip") {
    const Graph g = generate_random_regular(16, 3, 9);
    std::ostringstream out;
    write_graph(out, g);
    std::istringstream in(out.str());
    const Graph h = read_graph(in);
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.edges() == g.edges());

    std::istringstream commented("# a comment\n2 1 # trailing\n\n0 1\n");
    const Graph c = read_graph(commented);
    CHECK(c.vertex_count() == 2);
    CHECK(c.edge_count() == 1);

    std::istringstream truncated("4 3\n0 1\n");
    CHECK_THROWS_AS(read_graph(truncated), std::runtime_error);
}

TEST_CASE("graph hash distinguishes instances and ignores nothing") {
    const Graph a = generate_random_regular(16, 3, 1);
    const Graph b = generate_random_regular(16, 3, 2);
    CHECK(graph_hash(a) != graph_hash(b));
    CHECK(graph_hash_hex(a).size() == 16);
    CHECK(graph_hash(a) == graph_hash(Graph(a.vertex_count(), a.edges())));
}
