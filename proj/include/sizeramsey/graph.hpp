#ifndef SIZERAMSEY_GRAPH_HPP
#define SIZERAMSEY_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sizeramsey/errors.hpp"
#include "sizeramsey/rational.hpp"

namespace sizeramsey {

using Vertex = std::uint32_t;

// Unordered pair stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Copies share the underlying storage, so passing graphs by value is cheap
/// and concurrent readers need no synchronisation.
class Graph {
public:
    Graph() : impl_(std::make_shared<const Impl>()) {}

    explicit Graph(std::size_t n) : Graph(n, std::span<const Edge>{}) {}

    // Pairs may be given in either orientation; duplicates are merged.
    // Self-loops and out-of-range endpoints are rejected.
    Graph(std::size_t n, std::span<const Edge> edges) {
        if (n > std::numeric_limits<Vertex>::max()) throw DomainError("graph: too many vertices");
        Impl impl;
        impl.n = n;
        impl.edges.reserve(edges.size());
        for (const Edge& e : edges) {
            if (e.u == e.v) throw DomainError("graph: self-loop at vertex " + std::to_string(e.u));
            if (e.u >= n || e.v >= n) {
                throw DomainError("graph: edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "} out of range for n=" + std::to_string(n));
            }
            impl.edges.push_back(make_edge(e.u, e.v));
        }
        std::sort(impl.edges.begin(), impl.edges.end());
        impl.edges.erase(std::unique(impl.edges.begin(), impl.edges.end()), impl.edges.end());
        impl.adjacency.assign(n, {});
        for (const Edge& e : impl.edges) {
            impl.adjacency[e.u].push_back(e.v);
            impl.adjacency[e.v].push_back(e.u);
        }
        for (auto& row : impl.adjacency) std::sort(row.begin(), row.end());
        impl_ = std::make_shared<const Impl>(std::move(impl));
    }

    Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n, std::span<const Edge>(edges)) {}

    std::size_t vertex_count() const { return impl_->n; }
    std::size_t edge_count() const { return impl_->edges.size(); }

    std::span<const Vertex> neighbours(Vertex v) const { return impl_->adjacency.at(v); }
    std::size_t degree(Vertex v) const { return impl_->adjacency.at(v).size(); }

    bool has_edge(Vertex a, Vertex b) const {
        if (a == b || a >= vertex_count() || b >= vertex_count()) return false;
        const auto& row = impl_->adjacency[a].size() <= impl_->adjacency[b].size() ? impl_->adjacency[a]
                                                                                      : impl_->adjacency[b];
        Vertex other = impl_->adjacency[a].size() <= impl_->adjacency[b].size() ? b : a;
        return std::binary_search(row.begin(), row.end(), other);
    }

    // Canonical edge order: lexicographic in (u, v) with u < v.
    std::span<const Edge> edges() const { return impl_->edges; }

    std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
        if (a == b) return std::nullopt;
        Edge key = make_edge(a, b);
        auto it = std::lower_bound(impl_->edges.begin(), impl_->edges.end(), key);
        if (it == impl_->edges.end() || *it != key) return std::nullopt;
        return static_cast<std::size_t>(it - impl_->edges.begin());
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.impl_ == b.impl_ || (a.vertex_count() == b.vertex_count() && a.impl_->edges == b.impl_->edges);
    }

private:
    struct Impl {
        std::size_t n = 0;
        std::vector<Edge> edges;
        std::vector<std::vector<Vertex>> adjacency;
    };

    std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Standard families

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({Vertex(i), Vertex(i + 1)});
    return Graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw DomainError("cycle_graph: need n >= 3");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back(make_edge(Vertex(i), Vertex((i + 1) % n)));
    return Graph(n, edges);
}

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) edges.push_back({Vertex(u), Vertex(v)});
    return Graph(n, edges);
}

// Sides {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < a; ++u)
        for (std::size_t v = 0; v < b; ++v) edges.push_back({Vertex(u), Vertex(a + v)});
    return Graph(a + b, edges);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> edges(a.edges().begin(), a.edges().end());
    const auto shift = static_cast<Vertex>(a.vertex_count());
    for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
    return Graph(a.vertex_count() + b.vertex_count(), edges);
}

// ---------------------------------------------------------------------------
// Derived graphs

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> origin;  // new vertex -> vertex of the parent graph
};

// Vertices are relabelled in the order given.
inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<Vertex> local(g.vertex_count(), std::numeric_limits<Vertex>::max());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        Vertex v = vertices[i];
        if (v >= g.vertex_count()) throw DomainError("induced_subgraph: vertex out of range");
        if (local[v] != std::numeric_limits<Vertex>::max()) throw DomainError("induced_subgraph: repeated vertex");
        local[v] = static_cast<Vertex>(i);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (local[e.u] != std::numeric_limits<Vertex>::max() && local[e.v] != std::numeric_limits<Vertex>::max())
            edges.push_back(make_edge(local[e.u], local[e.v]));
    }
    return {Graph(vertices.size(), edges), std::vector<Vertex>(vertices.begin(), vertices.end())};
}

inline Graph remove_edges(const Graph& g, std::span<const Edge> removed) {
    std::vector<Edge> drop(removed.begin(), removed.end());
    for (Edge& e : drop) e = make_edge(e.u, e.v);
    std::sort(drop.begin(), drop.end());
    std::vector<Edge> kept;
    for (const Edge& e : g.edges())
        if (!std::binary_search(drop.begin(), drop.end(), e)) kept.push_back(e);
    return Graph(g.vertex_count(), kept);
}

// Same vertex count and every edge of `sub` present in `super`.
inline bool is_subgraph(const Graph& sub, const Graph& super) {
    if (sub.vertex_count() != super.vertex_count()) return false;
    return std::includes(super.edges().begin(), super.edges().end(), sub.edges().begin(), sub.edges().end());
}

// ---------------------------------------------------------------------------
// Measurements

inline std::size_t max_degree(const Graph& g) {
    std::size_t best = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
    return best;
}

inline std::vector<std::size_t> distances(const Graph& g, Vertex source) {
    if (source >= g.vertex_count()) throw DomainError("distances: source out of range");
    std::vector<std::size_t> dist(g.vertex_count(), kUnreachable);
    std::vector<Vertex> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        for (Vertex y : g.neighbours(x)) {
            if (dist[y] == kUnreachable) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

/// Joins every pair of distinct vertices at distance at most k in g.
inline Graph power(const Graph& g, std::size_t k) {
    if (k == 0) throw DomainError("power: k must be positive");
    if (k == 1) return g;
    const std::size_t n = g.vertex_count();
    std::vector<Edge> edges;
    std::vector<std::size_t> stamp(n, kUnreachable);
    std::vector<std::size_t> depth(n, 0);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        queue.assign(1, s);
        stamp[s] = s;
        depth[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex x = queue[head];
            if (depth[x] == k) continue;
            for (Vertex y : g.neighbours(x)) {
                if (stamp[y] == s) continue;
                stamp[y] = s;
                depth[y] = depth[x] + 1;
                queue.push_back(y);
                if (y > s) edges.push_back({s, y});
            }
        }
    }
    return Graph(n, edges);
}

inline Graph path_power(std::size_t n, std::size_t k) {
    if (n == 0) throw DomainError("path_power: n must be positive");
    if (k == 0) throw DomainError("path_power: k must be positive");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n && j <= i + k; ++j) edges.push_back({Vertex(i), Vertex(j)});
    return Graph(n, edges);
}

namespace detail {

// Breadth-first search scratch space reused across many bounded searches.
class BfsWorkspace {
public:
    explicit BfsWorkspace(std::size_t n) : stamp_(n, 0), parent_(n, 0), depth_(n, 0) {}

    // Shortest path from `source` to `target` of length at most `max_len`
    // that does not use the edge {source, target} itself. `neighbours(x)`
    // must return an iterable range of vertices.
    template <class Neighbours>
    std::vector<Vertex> path_avoiding_edge(Neighbours&& neighbours, Vertex source, Vertex target,
                                           std::size_t max_len) {
        ++epoch_;
        queue_.assign(1, source);
        stamp_[source] = epoch_;
        depth_[source] = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            Vertex x = queue_[head];
            if (depth_[x] >= max_len) continue;
            for (Vertex y : neighbours(x)) {
                if (x == source && y == target) continue;
                if (stamp_[y] == epoch_) continue;
                stamp_[y] = epoch_;
                parent_[y] = x;
                depth_[y] = depth_[x] + 1;
                if (y == target) {
                    std::vector<Vertex> path{target};
                    while (path.back() != source) path.push_back(parent_[path.back()]);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue_.push_back(y);
            }
        }
        return {};
    }

private:
    std::uint64_t epoch_ = 0;
    std::vector<std::uint64_t> stamp_;
    std::vector<Vertex> parent_;
    std::vector<std::size_t> depth_;
    std::vector<Vertex> queue_;
};

}  // namespace detail

/// A shortest cycle of length at most `max_len`, as a closed vertex sequence
/// (the last vertex is adjacent to the first), or nullopt when g has girth
/// greater than `max_len`.
inline std::optional<std::vector<Vertex>> girth_violation(const Graph& g, std::size_t max_len) {
    if (max_len < 3) throw DomainError("girth_violation: cycle length bound must be >= 3");
    detail::BfsWorkspace bfs(g.vertex_count());
    std::optional<std::vector<Vertex>> best;
    std::size_t limit = max_len;  // longest cycle still worth finding
    for (const Edge& e : g.edges()) {
        if (limit < 3) break;
        auto path = bfs.path_avoiding_edge([&](Vertex x) { return g.neighbours(x); }, e.u, e.v, limit - 1);
        if (!path.empty()) {
            limit = path.size() - 1;  // cycle length is path.size(); look for strictly shorter
            best = std::move(path);
        }
    }
    return best;
}

namespace detail {

inline std::vector<char> membership(const Graph& g, std::span<const Vertex> set, const char* op) {
    std::vector<char> in(g.vertex_count(), 0);
    for (Vertex v : set) {
        if (v >= g.vertex_count()) throw DomainError(std::string(op) + ": vertex out of range");
        if (in[v]) throw DomainError(std::string(op) + ": repeated vertex " + std::to_string(v));
        in[v] = 1;
    }
    return in;
}

}  // namespace detail

inline std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> set) {
    auto in = detail::membership(g, set, "induced_edge_count");
    std::size_t count = 0;
    for (Vertex v : set)
        for (Vertex w : g.neighbours(v))
            if (in[w] && w > v) ++count;
    return count;
}

inline std::size_t cross_edge_count(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys) {
    auto in_y = detail::membership(g, ys, "cross_edge_count");
    auto in_x = detail::membership(g, xs, "cross_edge_count");
    for (Vertex v : xs)
        if (in_y[v]) throw DomainError("cross_edge_count: sets overlap at vertex " + std::to_string(v));
    std::size_t count = 0;
    for (Vertex v : xs)
        for (Vertex w : g.neighbours(v))
            if (in_y[w]) ++count;
    return count;
}

/// e(g[S]) / C(|S|, 2), exactly.
inline Rational density_set(const Graph& g, std::span<const Vertex> set) {
    if (set.size() < 2) throw DomainError("density_set: need |S| >= 2");
    return Rational(induced_edge_count(g, set)) / binomial(set.size(), 2);
}

/// e(X, Y) / (|X| |Y|) for disjoint nonempty X, Y, exactly.
inline Rational density_pair(const Graph& g, std::span<const Vertex> xs, std::span<const Vertex> ys) {
    if (xs.empty() || ys.empty()) throw DomainError("density_pair: sets must be nonempty");
    std::size_t e = cross_edge_count(g, xs, ys);
    return Rational(e) / Rational(xs.size() * ys.size());
}

// ---------------------------------------------------------------------------
// Edge-list text format: "n m" then m lines "u v" with u < v.

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

inline Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    auto fail = [&](const std::string& what) -> ParseError {
        return ParseError("edge list line " + std::to_string(line_no) + ": " + what);
    };
    if (!next_line()) throw ParseError("edge list: missing header line \"n m\"");
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0) throw fail("expected \"n m\"");
    std::string rest;
    if (header >> rest) throw fail("trailing text after header");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_line()) throw ParseError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        std::istringstream row(line);
        long long u = -1, v = -1;
        if (!(row >> u >> v)) throw fail("expected \"u v\"");
        if (row >> rest) throw fail("trailing text");
        if (u < 0 || v < 0 || u >= n || v >= n) throw fail("vertex out of range");
        if (u >= v) throw fail("edges must satisfy u < v");
        edges.push_back({Vertex(u), Vertex(v)});
    }
    if (next_line()) throw fail("more edges than declared");
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ParseError("edge list: duplicate edge");
    return Graph(static_cast<std::size_t>(n), edges);
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_GRAPH_HPP
