#ifndef SIZERAMSEY_SUBSETS_HPP
#define SIZERAMSEY_SUBSETS_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/rational.hpp"

// Bitmask helpers for exhaustive enumeration on graphs with at most 64 vertices.

namespace sizeramsey::subsets {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxMaskVertices = 64;

inline std::vector<Mask> adjacency_masks(const Graph& g) {
    if (g.vertex_count() > kMaxMaskVertices) throw DomainError("exhaustive enumeration needs at most 64 vertices");
    std::vector<Mask> adj(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= Mask{1} << e.v;
        adj[e.v] |= Mask{1} << e.u;
    }
    return adj;
}

inline std::vector<Vertex> to_vertices(Mask m) {
    std::vector<Vertex> out;
    while (m) {
        out.push_back(static_cast<Vertex>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

inline Mask to_mask(std::span<const Vertex> vs) {
    Mask m = 0;
    for (Vertex v : vs) m |= Mask{1} << v;
    return m;
}

inline std::size_t cross_edges(const std::vector<Mask>& adj, Mask xs, Mask ys) {
    std::size_t count = 0;
    while (xs) {
        count += static_cast<std::size_t>(std::popcount(adj[std::countr_zero(xs)] & ys));
        xs &= xs - 1;
    }
    return count;
}

// Number of unordered pairs {X, Y} of disjoint k-subsets of an n-set.
inline BigInt disjoint_pair_count(std::size_t n, std::size_t k) {
    if (2 * k > n) return 0;
    return numerator(binomial(n, k) * binomial(n - k, k) / 2);
}

/// Calls f(X, Y) for every unordered pair of disjoint k-subsets of {0..n-1},
/// each pair once with min(X) < min(Y), in lexicographic order of (X, Y).
/// Stops early when f returns false. Returns false iff stopped early.
template <class F>
bool for_each_disjoint_pair(std::size_t n, std::size_t k, F&& f) {
    if (n > kMaxMaskVertices) throw DomainError("exhaustive enumeration needs at most 64 vertices");
    if (k == 0 || 2 * k > n) return true;
    std::vector<std::size_t> xi(k), yi(k);
    std::vector<Vertex> rest;
    for (std::size_t i = 0; i < k; ++i) xi[i] = i;
    for (;;) {
        Mask xs = 0;
        for (std::size_t i : xi) xs |= Mask{1} << i;
        rest.clear();
        for (Vertex v = static_cast<Vertex>(xi[0] + 1); v < n; ++v)
            if (!(xs >> v & 1)) rest.push_back(v);
        if (rest.size() >= k) {
            for (std::size_t i = 0; i < k; ++i) yi[i] = i;
            for (;;) {
                Mask ys = 0;
                for (std::size_t i : yi) ys |= Mask{1} << rest[i];
                if (!f(xs, ys)) return false;
                std::size_t i = k;
                while (i > 0 && yi[i - 1] == rest.size() - k + i - 1) --i;
                if (i == 0) break;
                ++yi[i - 1];
                for (std::size_t j = i; j < k; ++j) yi[j] = yi[j - 1] + 1;
            }
        }
        std::size_t i = k;
        while (i > 0 && xi[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++xi[i - 1];
        for (std::size_t j = i; j < k; ++j) xi[j] = xi[j - 1] + 1;
    }
    return true;
}

// A disjoint pair of k-sets with no edge between them, if one exists.
inline std::optional<std::pair<Mask, Mask>> find_empty_pair(const Graph& g, std::size_t k) {
    auto adj = adjacency_masks(g);
    std::optional<std::pair<Mask, Mask>> found;
    // Enumerate X; any k vertices outside X and N(X) complete a witness.
    const std::size_t n = g.vertex_count();
    if (k == 0 || 2 * k > n) return found;
    std::vector<std::size_t> xi(k);
    for (std::size_t i = 0; i < k; ++i) xi[i] = i;
    const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    for (;;) {
        Mask xs = 0, nbrs = 0;
        for (std::size_t i : xi) {
            xs |= Mask{1} << i;
            nbrs |= adj[i];
        }
        Mask free = all & ~xs & ~nbrs;
        if (static_cast<std::size_t>(std::popcount(free)) >= k) {
            Mask ys = 0;
            for (std::size_t c = 0; c < k; ++c) {
                Mask low = free & (~free + 1);
                ys |= low;
                free &= free - 1;
            }
            return std::make_pair(xs, ys);
        }
        std::size_t i = k;
        while (i > 0 && xi[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++xi[i - 1];
        for (std::size_t j = i; j < k; ++j) xi[j] = xi[j - 1] + 1;
    }
    return found;
}

}  // namespace sizeramsey::subsets

#endif  // SIZERAMSEY_SUBSETS_HPP
