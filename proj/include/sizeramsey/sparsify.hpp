#ifndef SIZERAMSEY_SPARSIFY_HPP
#define SIZERAMSEY_SPARSIFY_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/rational.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

/// Keeps each edge independently with probability p, visiting edges in
/// canonical order with a generator seeded by `seed`.
inline Graph sparsify(const Graph& h, const Rational& p, std::uint64_t seed) {
    if (p <= 0 || p > 1) throw DomainError("sparsify: p must lie in (0, 1], got " + to_string(p));
    if (p == 1) return h;
    const double prob = to_double(p);
    Rng rng(seed);
    std::vector<Edge> kept;
    for (const Edge& e : h.edges())
        if (rng.bernoulli(prob)) kept.push_back(e);
    return Graph(h.vertex_count(), kept);
}

struct PruneResult {
    InducedSubgraph kept;          // remaining vertices, relabelled in increasing id order
    std::vector<Vertex> removed;   // in removal order
};

/// Sequentially deletes `remove_count` vertices, each time one of current
/// maximum degree (smallest id on ties), with degrees updated after every deletion.
inline PruneResult prune_top(const Graph& h, std::size_t remove_count) {
    const std::size_t n = h.vertex_count();
    if (remove_count > n) throw DomainError("prune_top: cannot remove more vertices than exist");
    std::vector<std::size_t> degree(n);
    // Ordered by (degree, complemented id) descending: max degree, then smallest id.
    std::set<std::pair<std::size_t, Vertex>, std::greater<>> queue;
    const Vertex flip = std::numeric_limits<Vertex>::max();
    std::vector<char> alive(n, 1);
    for (Vertex v = 0; v < n; ++v) {
        degree[v] = h.degree(v);
        queue.insert({degree[v], flip - v});
    }
    PruneResult result;
    for (std::size_t step = 0; step < remove_count; ++step) {
        auto top = *queue.begin();
        queue.erase(queue.begin());
        Vertex v = flip - top.second;
        alive[v] = 0;
        result.removed.push_back(v);
        for (Vertex w : h.neighbours(v)) {
            if (!alive[w]) continue;
            queue.erase({degree[w], flip - w});
            --degree[w];
            queue.insert({degree[w], flip - w});
        }
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < n; ++v)
        if (alive[v]) keep.push_back(v);
    result.kept = induced_subgraph(h, keep);
    return result;
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_SPARSIFY_HPP
