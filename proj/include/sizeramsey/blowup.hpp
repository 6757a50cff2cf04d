#ifndef SIZERAMSEY_BLOWUP_HPP
#define SIZERAMSEY_BLOWUP_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

// Which perfect matching a sheared blow-up removes between adjacent cliques.
struct MatchingRule {
    enum class Kind { Aligned, Seeded };

    Kind kind = Kind::Aligned;
    std::uint64_t seed = 0;

    static MatchingRule aligned() { return {}; }
    static MatchingRule seeded(std::uint64_t s) { return {Kind::Seeded, s}; }
};

using HostPair = std::pair<Vertex, Vertex>;

/// Bookkeeping for a (possibly sheared) blow-up host.
///
/// Host vertex (v, i) is linearised as v * t + i, so clique_of[v] is always
/// {v*t, ..., v*t + t - 1}.
struct BlowupMap {
    Graph base;
    std::size_t t = 1;
    bool sheared = false;
    MatchingRule rule;
    std::vector<std::vector<Vertex>> clique_of;
    // Indexed by the base graph's canonical edge index. For base edge {u, v}
    // with u < v each pair is (x in C(u), y in C(v)). Empty unless sheared.
    std::vector<std::vector<HostPair>> removed_matchings;
    // Selected subcliques B(v) ⊆ C(v); an empty entry means "not selected".
    std::optional<std::vector<std::vector<Vertex>>> subclique;

    Vertex base_vertex_of(Vertex host_vertex) const { return static_cast<Vertex>(host_vertex / t); }
};

struct Blowup {
    Graph host;
    BlowupMap map;
};

namespace detail {

inline Blowup build_blowup(const Graph& h, std::size_t t, bool sheared, MatchingRule rule) {
    if (t == 0) throw DomainError("blow-up: t must be positive");
    BlowupMap map;
    map.base = h;
    map.t = t;
    map.sheared = sheared;
    map.rule = rule;
    map.clique_of.resize(h.vertex_count());
    std::vector<Edge> edges;
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
        for (std::size_t i = 0; i < t; ++i) map.clique_of[v].push_back(static_cast<Vertex>(v * t + i));
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = i + 1; j < t; ++j) edges.push_back({map.clique_of[v][i], map.clique_of[v][j]});
    }
    if (sheared) map.removed_matchings.resize(h.edge_count());
    std::vector<std::size_t> partner(t);
    for (std::size_t idx = 0; idx < h.edge_count(); ++idx) {
        const Edge& e = h.edges()[idx];
        const auto& cu = map.clique_of[e.u];
        const auto& cv = map.clique_of[e.v];
        if (!sheared) {
            for (Vertex x : cu)
                for (Vertex y : cv) edges.push_back({x, y});
            continue;
        }
        std::iota(partner.begin(), partner.end(), std::size_t{0});
        if (rule.kind == MatchingRule::Kind::Seeded) {
            Rng rng(derive_seed(rule.seed, idx));
            rng.shuffle(std::span<std::size_t>(partner));
        }
        for (std::size_t i = 0; i < t; ++i) {
            map.removed_matchings[idx].push_back({cu[i], cv[partner[i]]});
            for (std::size_t j = 0; j < t; ++j)
                if (j != partner[i]) edges.push_back({cu[i], cv[j]});
        }
    }
    return {Graph(h.vertex_count() * t, edges), std::move(map)};
}

}  // namespace detail

/// H(t): every vertex becomes a t-clique, every edge a complete bipartite graph.
inline Blowup complete_blowup(const Graph& h, std::size_t t) {
    return detail::build_blowup(h, t, false, MatchingRule::aligned());
}

/// H{t}: H(t) minus one perfect matching between each pair of adjacent cliques.
inline Blowup sheared_blowup(const Graph& h, std::size_t t, MatchingRule rule = MatchingRule::aligned()) {
    return detail::build_blowup(h, t, true, rule);
}

inline std::size_t complete_blowup_edge_count(std::size_t base_vertices, std::size_t base_edges, std::size_t t) {
    return base_edges * t * t + base_vertices * (t * (t - 1) / 2);
}

inline std::size_t sheared_blowup_edge_count(std::size_t base_vertices, std::size_t base_edges, std::size_t t) {
    return base_edges * (t * t - t) + base_vertices * (t * (t - 1) / 2);
}

// Checks every BlowupMap invariant against the host graph. Returns a
// description of the first violation, or nullopt.
inline std::optional<std::string> check_blowup(const Graph& host, const BlowupMap& map) {
    const std::size_t t = map.t;
    if (host.vertex_count() != map.base.vertex_count() * t) return "host vertex count is not |V(base)| * t";
    if (map.clique_of.size() != map.base.vertex_count()) return "clique_of size mismatch";
    std::vector<char> seen(host.vertex_count(), 0);
    for (Vertex v = 0; v < map.clique_of.size(); ++v) {
        if (map.clique_of[v].size() != t) return "clique of vertex " + std::to_string(v) + " has wrong size";
        for (Vertex x : map.clique_of[v]) {
            if (x >= host.vertex_count() || seen[x]) return "cliques do not partition the host";
            seen[x] = 1;
        }
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = i + 1; j < t; ++j)
                if (!host.has_edge(map.clique_of[v][i], map.clique_of[v][j]))
                    return "clique of vertex " + std::to_string(v) + " is not complete";
    }
    if (map.sheared) {
        if (map.removed_matchings.size() != map.base.edge_count()) return "removed_matchings size mismatch";
        for (std::size_t idx = 0; idx < map.base.edge_count(); ++idx) {
            const Edge& e = map.base.edges()[idx];
            const auto& pairs = map.removed_matchings[idx];
            if (pairs.size() != t) return "removed matching of base edge is not perfect";
            std::vector<char> left(host.vertex_count(), 0), right(host.vertex_count(), 0);
            for (auto [x, y] : pairs) {
                if (map.base_vertex_of(x) != e.u || map.base_vertex_of(y) != e.v) return "removed pair outside its cliques";
                if (left[x] || right[y]) return "removed pairs do not form a matching";
                left[x] = right[y] = 1;
                if (host.has_edge(x, y)) return "removed pair is still a host edge";
            }
        }
    }
    std::size_t expected = map.sheared
                               ? sheared_blowup_edge_count(map.base.vertex_count(), map.base.edge_count(), t)
                               : complete_blowup_edge_count(map.base.vertex_count(), map.base.edge_count(), t);
    if (host.edge_count() != expected) return "host edge count does not match the blow-up formula";
    if (map.subclique) {
        if (map.subclique->size() != map.base.vertex_count()) return "subclique size mismatch";
        for (Vertex v = 0; v < map.subclique->size(); ++v)
            for (Vertex x : (*map.subclique)[v])
                if (map.base_vertex_of(x) != v || x >= host.vertex_count())
                    return "subclique of vertex " + std::to_string(v) + " leaves its clique";
    }
    return std::nullopt;
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_BLOWUP_HPP
