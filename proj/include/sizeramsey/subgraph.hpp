#ifndef SIZERAMSEY_SUBGRAPH_HPP
#define SIZERAMSEY_SUBGRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "sizeramsey/edge_colouring.hpp"
#include "sizeramsey/embedding.hpp"
#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"

namespace sizeramsey {

/// Order in which pattern vertices are mapped: start from a maximum-degree
/// vertex, then always take the vertex with most already-placed neighbours
/// (higher degree, then lower id on ties). A new component starts when no
/// remaining vertex touches the placed ones.
inline std::vector<Vertex> search_order(const Graph& pattern) {
    const std::size_t n = pattern.vertex_count();
    std::vector<std::size_t> placed_nbrs(n, 0);
    std::vector<char> placed(n, 0);
    std::vector<Vertex> order;
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = 0;
        bool have = false;
        for (Vertex v = 0; v < n; ++v) {
            if (placed[v]) continue;
            if (!have || placed_nbrs[v] > placed_nbrs[best] ||
                (placed_nbrs[v] == placed_nbrs[best] && pattern.degree(v) > pattern.degree(best))) {
                best = v;
                have = true;
            }
        }
        placed[best] = 1;
        order.push_back(best);
        for (Vertex w : pattern.neighbours(best)) ++placed_nbrs[w];
    }
    return order;
}

inline std::vector<Vertex> natural_order(std::size_t n) {
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    return order;
}

namespace detail {

// Backtracking monomorphism search. `host` adjacency only; colour filtering
// is done by the caller passing a colour-class graph.
class SubgraphSearch {
public:
    SubgraphSearch(const Graph& host, const Graph& pattern, std::vector<Vertex> order)
        : host_(host), pattern_(pattern), order_(std::move(order)) {
        const std::size_t p = pattern.vertex_count();
        if (order_.size() != p) throw DomainError("find_subgraph: order must list every pattern vertex once");
        std::vector<std::size_t> pos(p, p);
        for (std::size_t i = 0; i < p; ++i) {
            if (order_[i] >= p || pos[order_[i]] != p) throw DomainError("find_subgraph: order is not a permutation");
            pos[order_[i]] = i;
        }
        earlier_.resize(p);
        for (std::size_t i = 0; i < p; ++i)
            for (Vertex w : pattern.neighbours(order_[i]))
                if (pos[w] < i) earlier_[i].push_back(w);
        map_.assign(p, 0);
        used_.assign(host.vertex_count(), 0);
        if (host.vertex_count() <= 64) {
            masks_.assign(host.vertex_count(), 0);
            for (const Edge& e : host.edges()) {
                masks_[e.u] |= std::uint64_t{1} << e.v;
                masks_[e.v] |= std::uint64_t{1} << e.u;
            }
        }
    }

    std::optional<std::vector<Vertex>> run() {
        if (pattern_.vertex_count() > host_.vertex_count()) return std::nullopt;
        for (std::size_t i = 0; i < pattern_.vertex_count(); ++i)
            if (pattern_.degree(order_[i]) > 0 && host_.edge_count() == 0) return std::nullopt;
        if (place(0)) return map_;
        return std::nullopt;
    }

private:
    bool place(std::size_t i) {
        if (i == order_.size()) return true;
        const Vertex pv = order_[i];
        if (!masks_.empty()) {
            std::uint64_t cand = host_.vertex_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << host_.vertex_count()) - 1;
            cand &= ~used_mask_;
            for (Vertex w : earlier_[i]) cand &= masks_[map_[w]];
            while (cand) {
                Vertex x = static_cast<Vertex>(std::countr_zero(cand));
                cand &= cand - 1;
                if (host_.degree(x) < pattern_.degree(pv)) continue;
                map_[pv] = x;
                used_mask_ |= std::uint64_t{1} << x;
                if (place(i + 1)) return true;
                used_mask_ &= ~(std::uint64_t{1} << x);
            }
            return false;
        }
        auto try_vertex = [&](Vertex x) {
            if (used_[x] || host_.degree(x) < pattern_.degree(pv)) return false;
            for (Vertex w : earlier_[i])
                if (!host_.has_edge(map_[w], x)) return false;
            map_[pv] = x;
            used_[x] = 1;
            if (place(i + 1)) return true;
            used_[x] = 0;
            return false;
        };
        if (earlier_[i].empty()) {
            for (Vertex x = 0; x < host_.vertex_count(); ++x)
                if (try_vertex(x)) return true;
            return false;
        }
        // Candidates come from the smallest neighbourhood among placed neighbours.
        Vertex pivot = map_[earlier_[i][0]];
        for (Vertex w : earlier_[i])
            if (host_.degree(map_[w]) < host_.degree(pivot)) pivot = map_[w];
        for (Vertex x : host_.neighbours(pivot))
            if (try_vertex(x)) return true;
        return false;
    }

    const Graph& host_;
    const Graph& pattern_;
    std::vector<Vertex> order_;
    std::vector<std::vector<Vertex>> earlier_;
    std::vector<Vertex> map_;
    std::vector<char> used_;
    std::vector<std::uint64_t> masks_;
    std::uint64_t used_mask_ = 0;
};

}  // namespace detail

struct ColourClass {
    const EdgeColouring* colouring = nullptr;
    Colour colour = 1;
};

/// Injective map of pattern into host sending edges to edges (of the given
/// colour class when one is supplied). Absence is a value, not an error.
inline std::optional<Embedding> find_subgraph(const Graph& host, const Graph& pattern,
                                              std::optional<ColourClass> colour_class = std::nullopt,
                                              std::optional<std::vector<Vertex>> order = std::nullopt) {
    Graph target = host;
    if (colour_class) {
        if (!colour_class->colouring || !(colour_class->colouring->host() == host))
            throw DomainError("find_subgraph: colouring is not on the host");
        target = colour_class->colouring->colour_class(colour_class->colour);
    }
    detail::SubgraphSearch search(target, pattern, order ? std::move(*order) : search_order(pattern));
    auto map = search.run();
    if (!map) return std::nullopt;
    Embedding e{pattern, host, std::move(*map), std::nullopt};
    if (colour_class) e.constraint = ColourConstraint{*colour_class->colouring, {colour_class->colour}};
    return e;
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_SUBGRAPH_HPP
