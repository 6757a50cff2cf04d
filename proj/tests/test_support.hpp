#ifndef SIZERAMSEY_TEST_SUPPORT_HPP
#define SIZERAMSEY_TEST_SUPPORT_HPP

#include <cstdint>
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "sizeramsey/graph.hpp"

// Independent oracles and generators shared by the test suites. Nothing here
// calls into the code paths it is used to check.

namespace sizeramsey::testing {

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (unit(gen) < p) edges.push_back({u, v});
    return Graph(n, edges);
}

// All-pairs shortest paths by Floyd-Warshall.
inline std::vector<std::vector<std::size_t>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.vertex_count();
    const std::size_t inf = std::size_t{1} << 40;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

inline std::set<std::pair<Vertex, Vertex>> edge_set(const Graph& g) {
    std::set<std::pair<Vertex, Vertex>> out;
    for (const Edge& e : g.edges()) out.insert({e.u, e.v});
    return out;
}

// Length of a shortest cycle by brute force over simple cycles through each
// vertex (depth-first, tiny graphs only); 0 when acyclic.
inline std::size_t brute_force_girth(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::size_t best = 0;
    std::vector<char> used(n, 0);
    std::vector<Vertex> stack;
    auto dfs = [&](auto&& self, Vertex start, Vertex at, std::size_t len) -> void {
        for (Vertex w : g.neighbours(at)) {
            if (w == start && len >= 3) {
                if (best == 0 || len < best) best = len;
            } else if (!used[w] && w > start && (best == 0 || len + 1 < best)) {
                used[w] = 1;
                self(self, start, w, len + 1);
                used[w] = 0;
            }
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        used[s] = 1;
        dfs(dfs, s, s, 1);
        used[s] = 0;
    }
    return best;
}

inline bool is_valid_cycle(const Graph& g, const std::vector<Vertex>& cycle) {
    if (cycle.size() < 3) return false;
    std::set<Vertex> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    return true;
}

// Raw data for a Local Lemma instance: a template of maximum degree at most
// max_deg on nv vertices, disjoint blocks of q host vertices, and per template
// edge a random set of bad pairs of size at most q^2 / (4 dependency bound).
// Half of the bad pairs (rounded down) are host non-edges.
struct SyntheticLLL {
    Graph templ;
    std::vector<std::vector<Vertex>> cliques;
    Graph host;
    std::vector<std::vector<std::pair<Vertex, Vertex>>> bad;
};

inline SyntheticLLL synthetic_lll(std::size_t nv, std::size_t max_deg, std::size_t q, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<Edge> tedges;
    std::vector<std::size_t> deg(nv, 0);
    for (std::size_t attempt = 0; attempt < 4 * nv * max_deg; ++attempt) {
        Vertex u = static_cast<Vertex>(gen() % nv), v = static_cast<Vertex>(gen() % nv);
        if (u == v || deg[u] == max_deg || deg[v] == max_deg) continue;
        Edge e = make_edge(u, v);
        bool dup = false;
        for (const Edge& f : tedges) dup |= f.u == e.u && f.v == e.v;
        if (dup) continue;
        tedges.push_back(e);
        ++deg[u];
        ++deg[v];
    }
    SyntheticLLL out;
    out.templ = Graph(nv, tedges);
    for (std::size_t u = 0; u < nv; ++u) {
        std::vector<Vertex> block;
        for (std::size_t i = 0; i < q; ++i) block.push_back(static_cast<Vertex>(u * q + i));
        out.cliques.push_back(block);
    }
    const std::size_t dep = 2 * (max_deg > 0 ? max_deg - 1 : 0);
    const std::size_t budget = dep == 0 ? q * q : q * q / (4 * dep);
    std::vector<Edge> hedges;
    for (const Edge& e : out.templ.edges()) {
        std::vector<std::pair<Vertex, Vertex>> all;
        for (Vertex x : out.cliques[e.u])
            for (Vertex y : out.cliques[e.v]) all.emplace_back(x, y);
        std::shuffle(all.begin(), all.end(), gen);
        std::size_t count = budget == 0 ? 0 : static_cast<std::size_t>(gen() % (budget + 1));
        if (count == q * q) --count;
        std::vector<std::pair<Vertex, Vertex>> bad(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
        for (std::size_t i = count / 2; i < all.size(); ++i) hedges.push_back(make_edge(all[i].first, all[i].second));
        out.bad.push_back(std::move(bad));
    }
    out.host = Graph(nv * q, hedges);
    return out;
}

}  // namespace sizeramsey::testing

#endif  // SIZERAMSEY_TEST_SUPPORT_HPP
