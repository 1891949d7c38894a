#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specnorm/graphs.hpp"

#include <cstdio>
#include <fstream>
#include <set>

using namespace specnorm;

TEST_CASE("complete graph K4") {
    RegularGraph g = graph_from_arg("complete:n=4");
    CHECK(g.num_vertices == 4);
    CHECK(g.degree == 3);
    CHECK(g.q() == 2);
    CHECK(girth(g) == 3);
    CHECK(is_connected(g));
    g.validate();
}

TEST_CASE("complete bipartite K33") {
    RegularGraph g = graph_from_arg("bipartite:a=3,b=3");
    CHECK(g.num_vertices == 6);
    CHECK(g.degree == 3);
    // shortest cycle in a bipartite complete graph is a 4-cycle
    CHECK(girth(g) == 4);
    CHECK(inj_rad(girth(g)) == 1);
}

TEST_CASE("random regular graph basics") {
    GraphBuildSpec spec;
    spec.kind = GraphKind::random_regular;
    spec.n = 100;
    spec.degree = 4;
    spec.seed = 7;
    RegularGraph g = build_graph(spec);
    g.validate();
    CHECK(g.num_vertices == 100);
    for (const auto& nb : g.adjacency) CHECK(nb.size() == 4);
    CHECK(is_connected(g));
    CHECK_FALSE(g.has_multi_edges);

    // same seed reproduces the same graph, different seed a different one
    RegularGraph g2 = build_graph(spec);
    CHECK(edge_list_string(g) == edge_list_string(g2));
    spec.seed = 8;
    RegularGraph g3 = build_graph(spec);
    CHECK(edge_list_string(g) != edge_list_string(g3));
}

TEST_CASE("girth lifting reaches girth 8") {
    GraphBuildSpec spec;
    spec.kind = GraphKind::random_regular;
    spec.n = 500;
    spec.degree = 4;
    spec.min_girth = 8;
    spec.seed = 3;
    RegularGraph g = build_graph(spec);
    g.validate();
    CHECK(girth(g) >= 8);
    CHECK(is_connected(g));
}

TEST_CASE("girth against brute-force cycle search") {
    // small graph: compare BFS girth with an exhaustive DFS cycle search
    GraphBuildSpec spec;
    spec.kind = GraphKind::random_regular;
    spec.n = 24;
    spec.degree = 4;
    spec.seed = 19;
    RegularGraph g = build_graph(spec);

    int best = g.num_vertices + 1;
    // enumerate closed walks with no immediate backtracking from each start;
    // the shortest one that returns to its start is a shortest cycle
    for (int s = 0; s < g.num_vertices; ++s) {
        struct Item { int v, prev, len; };
        std::vector<Item> stack{{s, -1, 0}};
        while (!stack.empty()) {
            Item it = stack.back();
            stack.pop_back();
            if (it.len >= best) continue;
            for (int w : g.adjacency[it.v]) {
                if (w == it.prev) continue;
                if (w == s && it.len >= 2) best = std::min(best, it.len + 1);
                else if (it.len + 1 < best) stack.push_back({w, it.v, it.len + 1});
            }
        }
    }
    CHECK(girth(g) == best);
}

TEST_CASE("edge list round trip") {
    GraphBuildSpec spec;
    spec.kind = GraphKind::random_regular;
    spec.n = 30;
    spec.degree = 4;
    spec.seed = 4;
    RegularGraph g = build_graph(spec);

    std::string path = "test_graph_roundtrip.edges";
    save_edge_list(g, path);
    RegularGraph h = load_edge_list(path);
    std::remove(path.c_str());
    h.validate();
    CHECK(edge_list_string(g) == edge_list_string(h));

    // comments and blank lines are tolerated
    RegularGraph k = parse_edge_list("# triangle-ish\n0 1\n1 2\n2 0\n\n0 3\n1 3\n2 3\n", "k4");
    CHECK(k.num_vertices == 4);
    CHECK(k.degree == 3);
}

TEST_CASE("cayley graph of a cyclic group") {
    GraphBuildSpec spec;
    spec.kind = GraphKind::cayley;
    spec.n = 12;
    std::vector<int> shift(12), jump(12);
    for (int i = 0; i < 12; ++i) {
        shift[i] = (i + 1) % 12;
        jump[i] = (i + 5) % 12;
    }
    spec.generators = {shift, jump};
    RegularGraph g = build_graph(spec);
    g.validate();
    CHECK(g.num_vertices == 12);
    CHECK(g.degree == 4);  // two generators plus their inverses
    CHECK(is_connected(g));
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(graph_from_arg("complete:n=2"), InvalidSpec);
    GraphBuildSpec spec;
    spec.kind = GraphKind::random_regular;
    spec.n = 9;
    spec.degree = 3;  // odd product nd
    CHECK_THROWS_AS(build_graph(spec), InvalidSpec);
    spec.n = 100;
    spec.degree = 1;
    CHECK_THROWS_AS(build_graph(spec), InvalidSpec);

    RegularGraph bad;
    bad.num_vertices = 2;
    bad.degree = 1;
    bad.adjacency = {{1}, {0}};
    CHECK_THROWS_AS(bad.validate(), InvalidSpec);
}
