#ifndef SIZERAMSEY_EMBEDDING_HPP
#define SIZERAMSEY_EMBEDDING_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sizeramsey/edge_colouring.hpp"
#include "sizeramsey/graph.hpp"

namespace sizeramsey {

struct ColourConstraint {
    EdgeColouring colouring;      // colouring of the embedding's host
    std::vector<Colour> allowed;  // colours a mapped edge may carry
};

struct Embedding {
    Graph pattern;
    Graph host;
    std::vector<Vertex> map;      // pattern vertex -> host vertex
    std::optional<ColourConstraint> constraint;
};

struct EmbeddingCheck {
    bool ok = false;
    std::string reason;
};

// Re-checks an embedding from scratch: injective, edge preserving, colours allowed.
inline EmbeddingCheck validate_embedding(const Embedding& e) {
    if (e.map.size() != e.pattern.vertex_count()) return {false, "map size differs from pattern vertex count"};
    std::vector<char> hit(e.host.vertex_count(), 0);
    for (Vertex v = 0; v < e.map.size(); ++v) {
        Vertex x = e.map[v];
        if (x >= e.host.vertex_count()) return {false, "pattern vertex " + std::to_string(v) + " maps outside the host"};
        if (hit[x]) return {false, "not injective: host vertex " + std::to_string(x) + " used twice"};
        hit[x] = 1;
    }
    if (e.constraint && !(e.constraint->colouring.host() == e.host)) return {false, "colouring is not on the embedding host"};
    for (const Edge& pe : e.pattern.edges()) {
        Vertex x = e.map[pe.u], y = e.map[pe.v];
        std::string name = "pattern edge {" + std::to_string(pe.u) + "," + std::to_string(pe.v) + "}";
        if (!e.host.has_edge(x, y)) return {false, name + " maps to non-edge {" + std::to_string(x) + "," + std::to_string(y) + "}"};
        if (e.constraint) {
            Colour c = e.constraint->colouring.colour_of(x, y);
            const auto& ok = e.constraint->allowed;
            if (std::find(ok.begin(), ok.end(), c) == ok.end())
                return {false, name + " maps to an edge of disallowed colour " + std::to_string(c)};
        }
    }
    return {true, ""};
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_EMBEDDING_HPP
