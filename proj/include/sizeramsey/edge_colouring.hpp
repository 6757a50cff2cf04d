#ifndef SIZERAMSEY_EDGE_COLOURING_HPP
#define SIZERAMSEY_EDGE_COLOURING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"

namespace sizeramsey {

using Colour = std::uint16_t;

inline constexpr std::size_t kMaxSerialColours = 36;

/// A total map from the host's canonical edges to colours 1..s.
class EdgeColouring {
public:
    EdgeColouring() = default;

    EdgeColouring(Graph host, std::size_t s, std::vector<Colour> colours)
        : host_(std::move(host)), s_(s), colours_(std::move(colours)) {
        if (s_ == 0) throw DomainError("edge colouring: need at least one colour");
        if (colours_.size() != host_.edge_count())
            throw DomainError("edge colouring: " + std::to_string(colours_.size()) + " colours for " +
                              std::to_string(host_.edge_count()) + " edges");
        for (Colour c : colours_)
            if (c < 1 || c > s_) throw DomainError("edge colouring: colour " + std::to_string(c) + " outside 1.." + std::to_string(s_));
    }

    static EdgeColouring constant(const Graph& host, std::size_t s, Colour c) {
        return EdgeColouring(host, s, std::vector<Colour>(host.edge_count(), c));
    }

    const Graph& host() const { return host_; }
    std::size_t colour_count() const { return s_; }
    const std::vector<Colour>& colours() const { return colours_; }
    Colour at(std::size_t edge_index) const { return colours_.at(edge_index); }

    // Colour of host edge {u, v}; throws when {u, v} is not an edge.
    Colour colour_of(Vertex u, Vertex v) const {
        auto idx = host_.edge_index(u, v);
        if (!idx) throw DomainError("edge colouring: {" + std::to_string(u) + "," + std::to_string(v) + "} is not a host edge");
        return colours_[*idx];
    }

    bool has_colour(Vertex u, Vertex v, Colour c) const {
        auto idx = host_.edge_index(u, v);
        return idx && colours_[*idx] == c;
    }

    // The spanning subgraph of edges with colour c.
    Graph colour_class(Colour c) const {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < colours_.size(); ++i)
            if (colours_[i] == c) edges.push_back(host_.edges()[i]);
        return Graph(host_.vertex_count(), edges);
    }

    bool operator==(const EdgeColouring& o) const { return s_ == o.s_ && colours_ == o.colours_ && host_ == o.host_; }

private:
    Graph host_;
    std::size_t s_ = 1;
    std::vector<Colour> colours_;
};

namespace detail {
inline char colour_digit(Colour c) {
    int d = c - 1;
    return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}
}  // namespace detail

/// "s=<s>;m=<m>;" followed by one base-s digit (colour - 1) per canonical edge.
inline std::string serialize_colouring(const EdgeColouring& chi) {
    if (chi.colour_count() > kMaxSerialColours) throw DomainError("colouring serialisation supports at most 36 colours");
    std::string out = "s=" + std::to_string(chi.colour_count()) + ";m=" + std::to_string(chi.colours().size()) + ";";
    for (Colour c : chi.colours()) out.push_back(detail::colour_digit(c));
    return out;
}

inline EdgeColouring parse_colouring(const Graph& host, const std::string& text) {
    std::size_t s = 0, m = 0;
    std::size_t pos = 0;
    auto number_after = [&](const std::string& tag) {
        if (text.compare(pos, tag.size(), tag) != 0) throw ParseError("colouring: expected '" + tag + "' at offset " + std::to_string(pos));
        pos += tag.size();
        std::size_t end = text.find(';', pos);
        if (end == std::string::npos || end == pos) throw ParseError("colouring: missing ';' after " + tag);
        std::size_t value = 0;
        for (std::size_t i = pos; i < end; ++i) {
            if (text[i] < '0' || text[i] > '9') throw ParseError("colouring: bad digit in " + tag);
            value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        }
        pos = end + 1;
        return value;
    };
    s = number_after("s=");
    m = number_after("m=");
    if (s == 0 || s > kMaxSerialColours) throw ParseError("colouring: s must lie in 1..36");
    if (m != host.edge_count()) throw ParseError("colouring: m=" + std::to_string(m) + " but host has " + std::to_string(host.edge_count()) + " edges");
    if (text.size() - pos != m) throw ParseError("colouring: expected " + std::to_string(m) + " digits");
    std::vector<Colour> colours;
    for (; pos < text.size(); ++pos) {
        char ch = text[pos];
        int d = ch >= '0' && ch <= '9' ? ch - '0' : ch >= 'a' && ch <= 'z' ? ch - 'a' + 10 : -1;
        if (d < 0 || static_cast<std::size_t>(d) >= s) throw ParseError("colouring: digit '" + std::string(1, ch) + "' out of range");
        colours.push_back(static_cast<Colour>(d + 1));
    }
    return EdgeColouring(host, s, std::move(colours));
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_EDGE_COLOURING_HPP
