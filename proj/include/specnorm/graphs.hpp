#ifndef SPECNORM_GRAPHS_HPP
#define SPECNORM_GRAPHS_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace specnorm {

struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};
struct GenerationFailed : std::runtime_error {
    explicit GenerationFailed(const std::string& what) : std::runtime_error(what) {}
};

// Immutable q+1-regular graph.  Vertices are dense integers 0..n-1 and all
// operator matrices use this ordering.
struct RegularGraph {
    int num_vertices = 0;
    int degree = 0;  // q + 1
    std::vector<std::vector<int>> adjacency;
    std::string label;
    bool connected = true;   // loaders may accept disconnected graphs, flagged here
    bool has_multi_edges = false;

    int q() const { return degree - 1; }
    void validate() const;  // throws InvalidSpec on any violated invariant
};

enum class GraphKind { random_regular, complete, complete_bipartite, cayley };

struct GraphBuildSpec {
    GraphKind kind = GraphKind::random_regular;
    int n = 0;        // vertices (random_regular, cayley group size)
    int degree = 0;   // q+1 (random_regular)
    int a = 0, b = 0; // parts (complete_bipartite)
    int min_girth = 0;  // random_regular: rewire until girth >= min_girth (0 = off)
    // cayley: permutation generators on {0..n-1}; symmetric closure enforced
    std::vector<std::vector<int>> generators;
    std::uint64_t seed = 0;
};

RegularGraph build_graph(const GraphBuildSpec& spec);

// Shortest cycle length, by BFS from every vertex.
int girth(const RegularGraph& g);
inline int inj_rad(int girth_value) { return (girth_value - 1) / 2; }

bool is_connected(const RegularGraph& g);

// Edge-list text format: one "u v" per line, 0-based, '#' comments.
RegularGraph load_edge_list(const std::string& path);
void save_edge_list(const RegularGraph& g, const std::string& path);
std::string edge_list_string(const RegularGraph& g);  // canonical sorted form
RegularGraph parse_edge_list(const std::string& text, const std::string& label);

// Build either from an edge-list file or from a compact spec string like
// "random:n=100,d=4,seed=7,girth=8", "complete:n=4", "bipartite:a=4,b=4".
RegularGraph graph_from_arg(const std::string& arg);

}  // namespace specnorm

#endif
