#include "specnorm/graphs.hpp"
#include "specnorm/rng.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace specnorm {

void RegularGraph::validate() const {
    if (num_vertices <= 0) throw InvalidSpec("graph has no vertices");
    if (degree < 3) throw InvalidSpec("need q >= 2, i.e. degree >= 3");
    if ((int)adjacency.size() != num_vertices) throw InvalidSpec("adjacency size mismatch");
    for (int v = 0; v < num_vertices; ++v) {
        if ((int)adjacency[v].size() != degree)
            throw InvalidSpec("vertex " + std::to_string(v) + " does not have degree " + std::to_string(degree));
        for (int w : adjacency[v]) {
            if (w < 0 || w >= num_vertices) throw InvalidSpec("neighbor index out of range");
            if (w == v) throw InvalidSpec("self-loop at vertex " + std::to_string(v));
            // symmetry
            long long back = std::count(adjacency[w].begin(), adjacency[w].end(), v);
            long long fwd = std::count(adjacency[v].begin(), adjacency[v].end(), w);
            if (back != fwd) throw InvalidSpec("adjacency not symmetric");
        }
    }
}

bool is_connected(const RegularGraph& g) {
    if (g.num_vertices == 0) return false;
    std::vector<char> seen(g.num_vertices, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.adjacency[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                queue.push_back(w);
            }
    }
    return count == g.num_vertices;
}

namespace {

bool has_edge(const std::vector<std::vector<int>>& adj, int u, int v) {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

void drop_edge(std::vector<std::vector<int>>& adj, int u, int v) {
    auto it = std::find(adj[u].begin(), adj[u].end(), v);
    adj[u].erase(it);
    it = std::find(adj[v].begin(), adj[v].end(), u);
    adj[v].erase(it);
}

// Grow a d-regular graph of girth >= target directly: only ever insert an
// edge between degree-deficient vertices at distance >= target-1, so no cycle
// shorter than target can appear.  When a deficient vertex has every other
// deficient vertex inside its (target-2)-ball, a random edge inside that ball
// is deleted and construction continues.  Not a uniform sampler.
std::vector<std::vector<int>> grow_high_girth(int n, int d, int target, std::mt19937_64& rng) {
    std::vector<std::vector<int>> adj(n);
    std::vector<int> dist(n), queue, deficient, candidates;
    long long budget = 500LL * n * d + 100000;
    while (budget-- > 0) {
        deficient.clear();
        for (int v = 0; v < n; ++v)
            if ((int)adj[v].size() < d) deficient.push_back(v);
        if (deficient.empty()) return adj;

        int u = deficient[std::uniform_int_distribution<std::size_t>(0, deficient.size() - 1)(rng)];
        // BFS ball of radius target-2 around u
        std::fill(dist.begin(), dist.end(), -1);
        queue.assign(1, u);
        dist[u] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int x = queue[head];
            if (dist[x] >= target - 2) continue;
            for (int y : adj[x])
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
        }
        candidates.clear();
        for (int v : deficient)
            if (dist[v] < 0) candidates.push_back(v);
        if (!candidates.empty()) {
            int v = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
            adj[u].push_back(v);
            adj[v].push_back(u);
            continue;
        }
        // stuck: delete a random edge inside the ball and keep going
        int z = queue[std::uniform_int_distribution<std::size_t>(0, queue.size() - 1)(rng)];
        if (adj[z].empty()) continue;
        int w = adj[z][std::uniform_int_distribution<std::size_t>(0, adj[z].size() - 1)(rng)];
        drop_edge(adj, z, w);
    }
    throw GenerationFailed("girth lift budget exhausted");
}

RegularGraph random_regular(const GraphBuildSpec& spec) {
    const int n = spec.n, d = spec.degree;
    if (d < 3) throw InvalidSpec("random_regular: need degree >= 3 (q >= 2)");
    if (n <= d) throw InvalidSpec("random_regular: need n > degree");
    if ((long long)n * d % 2 != 0) throw InvalidSpec("random_regular: n*(q+1) must be even");

    std::mt19937_64 rng(spec.seed);
    const int max_attempts = spec.min_girth > 0 ? 30 : 1000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<std::vector<int>> adj(n);
        if (spec.min_girth > 0) {
            try {
                adj = grow_high_girth(n, d, spec.min_girth, rng);
            } catch (const GenerationFailed&) {
                continue;  // fresh attempt with new randomness
            }
        } else {
            // configuration model: pair up n*d half-edges, retry on collision
            std::vector<int> stubs((std::size_t)n * d);
            for (int v = 0; v < n; ++v)
                for (int k = 0; k < d; ++k) stubs[(std::size_t)v * d + k] = v;
            std::shuffle(stubs.begin(), stubs.end(), rng);

            bool ok = true;
            for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
                int u = stubs[i], v = stubs[i + 1];
                if (u == v || has_edge(adj, u, v)) {
                    ok = false;
                    break;
                }
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            if (!ok) continue;
        }

        RegularGraph g;
        g.num_vertices = n;
        g.degree = d;
        g.adjacency = std::move(adj);
        if (!is_connected(g)) continue;
        g.label = "random_regular(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                  ",seed=" + std::to_string(spec.seed) +
                  (spec.min_girth > 0 ? ",girth>=" + std::to_string(spec.min_girth) : "") + ")";
        for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
        g.validate();
        return g;
    }
    throw GenerationFailed("random_regular: rejection budget of " + std::to_string(max_attempts) +
                           " attempts exhausted");
}

RegularGraph cayley(const GraphBuildSpec& spec) {
    const int n = spec.n;
    if (n <= 0) throw InvalidSpec("cayley: need n > 0");
    if (spec.generators.empty()) throw InvalidSpec("cayley: no generators");

    // symmetric closure of the generating set
    std::set<std::vector<int>> gens;
    for (const auto& p : spec.generators) {
        if ((int)p.size() != n) throw InvalidSpec("cayley: generator size mismatch");
        std::vector<int> inv(n);
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            if (p[i] < 0 || p[i] >= n || seen[p[i]]) throw InvalidSpec("cayley: not a permutation");
            seen[p[i]] = 1;
            inv[p[i]] = i;
        }
        gens.insert(p);
        gens.insert(inv);
    }
    RegularGraph g;
    g.num_vertices = n;
    g.degree = (int)gens.size();
    g.adjacency.resize(n);
    for (const auto& p : gens)
        for (int i = 0; i < n; ++i) {
            if (p[i] == i) throw InvalidSpec("cayley: generator fixes a point (self-loop)");
            g.adjacency[i].push_back(p[i]);
        }
    for (int i = 0; i < n; ++i) {
        std::sort(g.adjacency[i].begin(), g.adjacency[i].end());
        for (std::size_t k = 1; k < g.adjacency[i].size(); ++k)
            if (g.adjacency[i][k] == g.adjacency[i][k - 1])
                throw InvalidSpec("cayley: generators collide (multi-edge)");
    }
    g.connected = is_connected(g);
    g.label = "cayley(n=" + std::to_string(n) + ",gens=" + std::to_string(gens.size()) + ")";
    g.validate();
    return g;
}

}  // namespace

RegularGraph build_graph(const GraphBuildSpec& spec) {
    switch (spec.kind) {
        case GraphKind::complete: {
            if (spec.n < 4) throw InvalidSpec("complete: need n >= 4 so that q >= 2");
            RegularGraph g;
            g.num_vertices = spec.n;
            g.degree = spec.n - 1;
            g.adjacency.resize(spec.n);
            for (int i = 0; i < spec.n; ++i)
                for (int j = 0; j < spec.n; ++j)
                    if (i != j) g.adjacency[i].push_back(j);
            g.label = "K" + std::to_string(spec.n);
            g.validate();
            return g;
        }
        case GraphKind::complete_bipartite: {
            if (spec.a != spec.b) throw InvalidSpec("complete_bipartite: parts must be equal for regularity");
            if (spec.a < 3) throw InvalidSpec("complete_bipartite: need parts >= 3 so that q >= 2");
            RegularGraph g;
            g.num_vertices = 2 * spec.a;
            g.degree = spec.a;
            g.adjacency.resize(g.num_vertices);
            for (int i = 0; i < spec.a; ++i)
                for (int j = 0; j < spec.b; ++j) {
                    g.adjacency[i].push_back(spec.a + j);
                    g.adjacency[spec.a + j].push_back(i);
                }
            g.label = "K" + std::to_string(spec.a) + "," + std::to_string(spec.b);
            g.validate();
            return g;
        }
        case GraphKind::random_regular:
            return random_regular(spec);
        case GraphKind::cayley:
            return cayley(spec);
    }
    throw InvalidSpec("unknown graph kind");
}

int girth(const RegularGraph& g) {
    const int n = g.num_vertices;
    int best = n + 1;
    // multi-edges give girth 2
    for (int v = 0; v < n; ++v) {
        std::vector<int> sorted = g.adjacency[v];
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 1; k < sorted.size(); ++k)
            if (sorted[k] == sorted[k - 1]) return 2;
    }
    std::vector<int> dist(n), parent(n);
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{root};
        dist[root] = 0;
        parent[root] = -1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (2 * dist[u] >= best) break;
            for (int w : g.adjacency[u]) {
                if (w == parent[u]) {
                    parent[u] = -2;  // skip the tree edge once, catch parallel paths
                    continue;
                }
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best > n) throw std::runtime_error("girth: graph is acyclic, impossible for a regular graph with q >= 2");
    return best;
}

RegularGraph parse_edge_list(const std::string& text, const std::string& label) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, int>> edges;
    int max_v = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int u, v;
        if (ls >> u >> v) {
            if (u < 0 || v < 0) throw InvalidSpec("edge list: negative vertex index");
            edges.emplace_back(u, v);
            max_v = std::max({max_v, u, v});
        }
    }
    if (edges.empty()) throw InvalidSpec("edge list: no edges");
    RegularGraph g;
    g.num_vertices = max_v + 1;
    g.adjacency.resize(g.num_vertices);
    for (auto [u, v] : edges) {
        if (u == v) throw InvalidSpec("edge list: self-loop");
        if (has_edge(g.adjacency, u, v)) g.has_multi_edges = true;
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    g.degree = (int)g.adjacency[0].size();
    for (const auto& nbrs : g.adjacency)
        if ((int)nbrs.size() != g.degree) throw InvalidSpec("edge list: graph is not regular");
    if (g.degree < 3) throw InvalidSpec("edge list: need q >= 2");
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    g.connected = is_connected(g);
    g.label = label;
    return g;
}

RegularGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open edge list: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str(), path);
}

std::string edge_list_string(const RegularGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.num_vertices; ++u)
        for (int v : g.adjacency[u])
            if (u < v) edges.emplace_back(u, v);
    std::sort(edges.begin(), edges.end());
    std::ostringstream out;
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
    return out.str();
}

void save_edge_list(const RegularGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    out << edge_list_string(g);
}

RegularGraph graph_from_arg(const std::string& arg) {
    auto colon = arg.find(':');
    std::string head = arg.substr(0, colon);
    if (head == "random" || head == "complete" || head == "bipartite" || head == "random_regular") {
        GraphBuildSpec spec;
        std::map<std::string, long long> kv;
        if (colon != std::string::npos) {
            std::istringstream rest(arg.substr(colon + 1));
            std::string item;
            while (std::getline(rest, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) throw InvalidSpec("bad graph spec item: " + item);
                kv[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
            }
        }
        if (head == "complete") {
            spec.kind = GraphKind::complete;
            spec.n = (int)kv["n"];
        } else if (head == "bipartite") {
            spec.kind = GraphKind::complete_bipartite;
            spec.a = (int)kv["a"];
            spec.b = (int)kv["b"];
        } else {
            spec.kind = GraphKind::random_regular;
            spec.n = (int)kv["n"];
            spec.degree = (int)kv["d"];
            spec.seed = (std::uint64_t)kv["seed"];
            if (kv.count("girth")) spec.min_girth = (int)kv["girth"];
        }
        return build_graph(spec);
    }
    return load_edge_list(arg);
}

}  // namespace specnorm
