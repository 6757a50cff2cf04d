#ifndef SIZERAMSEY_PATHS_HPP
#define SIZERAMSEY_PATHS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/rational.hpp"
#include "sizeramsey/rng.hpp"
#include "sizeramsey/subsets.hpp"

namespace sizeramsey {

struct PathWitness {
    std::vector<Vertex> vertices;
    // Part index of each vertex, for paths routed through prescribed parts.
    std::optional<std::vector<std::size_t>> class_trace;
};

/// Checks distinctness and adjacency, and when a trace is present that
/// vertex i lies in part (i mod t) of `parts`.
inline std::optional<std::string> check_path(const Graph& g, const PathWitness& path,
                                             const std::vector<std::vector<Vertex>>* parts = nullptr) {
    const auto& vs = path.vertices;
    std::vector<char> seen(g.vertex_count(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] >= g.vertex_count()) return "vertex " + std::to_string(vs[i]) + " out of range";
        if (seen[vs[i]]) return "vertex " + std::to_string(vs[i]) + " repeated";
        seen[vs[i]] = 1;
        if (i > 0 && !g.has_edge(vs[i - 1], vs[i]))
            return "consecutive vertices " + std::to_string(vs[i - 1]) + "," + std::to_string(vs[i]) + " not adjacent";
    }
    if (path.class_trace) {
        const auto& trace = *path.class_trace;
        if (trace.size() != vs.size()) return "class trace length differs from path length";
        if (parts) {
            const std::size_t t = parts->size();
            for (std::size_t i = 0; i < vs.size(); ++i) {
                if (trace[i] != i % t) return "class trace entry " + std::to_string(i) + " is not i mod t";
                const auto& part = (*parts)[trace[i]];
                if (std::find(part.begin(), part.end(), vs[i]) == part.end())
                    return "vertex " + std::to_string(vs[i]) + " not in part " + std::to_string(trace[i]);
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Covering a 2-coloured complete graph. The colouring is given by its blue
// graph; every non-edge is red.

struct PartitionResult {
    std::vector<PathWitness> blue_paths;          // at most ell, each nonempty
    std::vector<std::vector<Vertex>> red_classes; // exactly ell + 1, equal sizes (possibly 0)
};

enum class PartitionMode { Exhaustive, Heuristic, Auto };

struct PartitionCheck {
    bool ok = false;
    std::string reason;
};

inline constexpr std::size_t kExhaustivePartitionMax = 12;

class NoCoverFound : public SearchExhausted {
public:
    using SearchExhausted::SearchExhausted;
};

inline PartitionCheck verify_partition(const Graph& blue, const PartitionResult& result, std::size_t ell) {
    const std::size_t n = blue.vertex_count();
    std::vector<char> covered(n, 0);
    auto claim = [&](Vertex v) -> std::optional<std::string> {
        if (v >= n) return "vertex " + std::to_string(v) + " out of range";
        if (covered[v]) return "vertex " + std::to_string(v) + " covered twice";
        covered[v] = 1;
        return std::nullopt;
    };
    if (result.blue_paths.size() > ell) return {false, "more than ell blue paths"};
    for (const auto& path : result.blue_paths) {
        for (std::size_t i = 0; i < path.vertices.size(); ++i) {
            if (auto err = claim(path.vertices[i])) return {false, *err};
            if (i > 0 && !blue.has_edge(path.vertices[i - 1], path.vertices[i]))
                return {false, "red edge {" + std::to_string(path.vertices[i - 1]) + "," + std::to_string(path.vertices[i]) +
                                   "} inside a blue path"};
        }
    }
    if (result.red_classes.size() != ell + 1) return {false, "expected ell+1 red classes"};
    for (const auto& cls : result.red_classes) {
        if (cls.size() != result.red_classes.front().size()) return {false, "unbalanced"};
        for (Vertex v : cls)
            if (auto err = claim(v)) return {false, *err};
    }
    for (Vertex v = 0; v < n; ++v)
        if (!covered[v]) return {false, "vertex " + std::to_string(v) + " not covered"};
    for (std::size_t i = 0; i < result.red_classes.size(); ++i)
        for (std::size_t j = i + 1; j < result.red_classes.size(); ++j)
            for (Vertex x : result.red_classes[i])
                for (Vertex y : result.red_classes[j])
                    if (blue.has_edge(x, y))
                        return {false, "blue edge {" + std::to_string(x) + "," + std::to_string(y) + "} between red classes"};
    return {true, ""};
}

namespace detail {

// Connected components of the blue graph restricted to `members`.
inline std::vector<std::vector<Vertex>> blue_components(const Graph& blue, const std::vector<Vertex>& members) {
    std::vector<char> in(blue.vertex_count(), 0), seen(blue.vertex_count(), 0);
    for (Vertex v : members) in[v] = 1;
    std::vector<std::vector<Vertex>> comps;
    for (Vertex s : members) {
        if (seen[s]) continue;
        comps.emplace_back();
        std::vector<Vertex> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (Vertex w : blue.neighbours(v))
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

// Groups whole components into `bins` classes of exactly `size` vertices each.
inline std::optional<std::vector<std::vector<Vertex>>> pack_components(std::vector<std::vector<Vertex>> comps,
                                                                       std::size_t bins, std::size_t size,
                                                                       std::uint64_t node_budget = 200000) {
    std::size_t total = 0;
    for (const auto& c : comps) total += c.size();
    if (total != bins * size) return std::nullopt;
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<std::size_t> load(bins, 0), where(comps.size(), 0);
    std::uint64_t nodes = 0;
    auto place = [&](auto&& self, std::size_t i) -> bool {
        if (i == comps.size()) return true;
        if (++nodes > node_budget) return false;
        for (std::size_t b = 0; b < bins; ++b) {
            if (load[b] + comps[i].size() > size) continue;
            // Bins with equal load are interchangeable.
            bool dup = false;
            for (std::size_t e = 0; e < b && !dup; ++e) dup = load[e] == load[b];
            if (dup) continue;
            load[b] += comps[i].size();
            where[i] = b;
            if (self(self, i + 1)) return true;
            load[b] -= comps[i].size();
        }
        return false;
    };
    if (!place(place, 0)) return std::nullopt;
    std::vector<std::vector<Vertex>> classes(bins);
    for (std::size_t i = 0; i < comps.size(); ++i) classes[where[i]].insert(classes[where[i]].end(), comps[i].begin(), comps[i].end());
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end());
    return classes;
}

inline PartitionResult partition_exhaustive(const Graph& blue, std::size_t ell) {
    using subsets::Mask;
    const std::size_t n = blue.vertex_count();
    const Mask all = (Mask{1} << n) - 1;
    auto adj = subsets::adjacency_masks(blue);
    // ends[m]: vertices at which some Hamilton path of blue[m] can end.
    std::vector<Mask> ends(std::size_t{1} << n, 0);
    for (Mask m = 1; m <= all; ++m) {
        if (std::has_single_bit(m)) {
            ends[m] = m;
            continue;
        }
        for (Mask rest = m; rest; rest &= rest - 1) {
            Vertex v = static_cast<Vertex>(std::countr_zero(rest));
            Mask without = m & ~(Mask{1} << v);
            if (ends[without] & adj[v]) ends[m] |= Mask{1} << v;
        }
    }
    // Fewest blue paths covering each vertex set, with the first path chosen.
    const std::size_t inf = n + 1;
    std::vector<std::uint8_t> cover(std::size_t{1} << n, 0);
    std::vector<Mask> first(std::size_t{1} << n, 0);
    for (Mask m = 1; m <= all; ++m) {
        std::size_t best = inf;
        const Mask low = m & (~m + 1);
        const Mask others = m & ~low;
        for (Mask sub = others;; sub = (sub - 1) & others) {
            Mask piece = sub | low;
            if (ends[piece] && 1 + std::size_t{cover[m & ~piece]} < best) {
                best = 1 + cover[m & ~piece];
                first[m] = piece;
            }
            if (sub == 0) break;
        }
        cover[m] = static_cast<std::uint8_t>(best);
    }
    auto trace = [&](Mask m) {
        std::vector<Vertex> path;
        Vertex last = static_cast<Vertex>(std::countr_zero(ends[m]));
        while (m) {
            path.push_back(last);
            m &= ~(Mask{1} << last);
            if (!m) break;
            last = static_cast<Vertex>(std::countr_zero(ends[m] & adj[last]));
        }
        return path;
    };
    for (std::size_t q = n / (ell + 1) + 1; q-- > 0;) {
        const std::size_t size = q * (ell + 1);
        for (Mask r = 0; r <= all; ++r) {
            if (static_cast<std::size_t>(std::popcount(r)) != size) continue;
            const Mask rest = all & ~r;
            if (cover[rest] > ell) continue;
            auto classes = pack_components(blue_components(blue, subsets::to_vertices(r)), ell + 1, q);
            if (!classes) continue;
            PartitionResult result;
            result.red_classes = std::move(*classes);
            for (Mask m = rest; m; m &= ~first[m]) result.blue_paths.push_back({trace(first[m]), std::nullopt});
            return result;
        }
    }
    throw InternalError("exhaustive partition found no cover; the covering theorem guarantees one");
}

// Longest blue path found by greedy extension with endpoint rotations,
// using only vertices flagged in `avail`.
inline std::vector<Vertex> rotation_extension(const Graph& blue, const std::vector<char>& avail, Vertex start, Rng& rng) {
    std::vector<Vertex> path{start};
    std::vector<char> on(blue.vertex_count(), 0);
    on[start] = 1;
    std::vector<Vertex> options;
    auto extend = [&]() {
        options.clear();
        for (Vertex w : blue.neighbours(path.back()))
            if (avail[w] && !on[w]) options.push_back(w);
        if (options.empty()) return false;
        Vertex w = options[rng.below(options.size())];
        path.push_back(w);
        on[w] = 1;
        return true;
    };
    std::size_t rotations = 0;
    const std::size_t max_rotations = 4 * blue.vertex_count() + 8;
    bool flipped = false;
    for (;;) {
        if (extend()) continue;
        if (!flipped) {
            std::reverse(path.begin(), path.end());
            flipped = true;
            continue;
        }
        if (rotations++ >= max_rotations || path.size() < 3) break;
        // Rotate: an edge from the end to path[i] makes path[i+1] the new end.
        options.clear();
        for (Vertex w : blue.neighbours(path.back()))
            if (on[w] && w != path[path.size() - 2]) options.push_back(w);
        if (options.empty()) break;
        Vertex pivot = options[rng.below(options.size())];
        auto it = std::find(path.begin(), path.end(), pivot);
        std::reverse(it + 1, path.end());
        flipped = false;
    }
    return path;
}

inline PartitionResult partition_heuristic(const Graph& blue, std::size_t ell, std::uint64_t seed, std::size_t restarts) {
    const std::size_t n = blue.vertex_count();
    for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        std::vector<char> avail(n, 1);
        std::vector<std::vector<Vertex>> paths;
        for (std::size_t j = 0; j < ell; ++j) {
            std::vector<Vertex> left;
            for (Vertex v = 0; v < n; ++v)
                if (avail[v]) left.push_back(v);
            if (left.empty()) break;
            auto path = rotation_extension(blue, avail, left[rng.below(left.size())], rng);
            for (Vertex v : path) avail[v] = 0;
            paths.push_back(std::move(path));
        }
        // Shorten paths one tail vertex at a time until the remainder packs.
        for (;;) {
            std::vector<Vertex> rest;
            for (Vertex v = 0; v < n; ++v)
                if (avail[v]) rest.push_back(v);
            if (rest.size() % (ell + 1) == 0) {
                auto classes = pack_components(blue_components(blue, rest), ell + 1, rest.size() / (ell + 1));
                if (classes) {
                    PartitionResult result;
                    for (auto& p : paths)
                        if (!p.empty()) result.blue_paths.push_back({std::move(p), std::nullopt});
                    result.red_classes = std::move(*classes);
                    return result;
                }
            }
            auto longest = std::max_element(paths.begin(), paths.end(),
                                            [](const auto& a, const auto& b) { return a.size() < b.size(); });
            if (longest == paths.end() || longest->empty()) break;
            avail[longest->back()] = 1;
            longest->pop_back();
        }
    }
    throw NoCoverFound("heuristic partition found no cover after " + std::to_string(restarts) + " restarts");
}

}  // namespace detail

/// Covers the vertices by at most `ell` disjoint blue paths plus a red balanced
/// complete (ell+1)-partite graph. Exhaustive mode handles n <= 12; heuristic
/// mode may fail with NoCoverFound but never returns an invalid cover.
inline PartitionResult partition_two_coloured(const Graph& blue, std::size_t ell,
                                              PartitionMode mode = PartitionMode::Auto, std::uint64_t seed = 0,
                                              std::size_t restarts = 32) {
    if (ell == 0) throw DomainError("partition_two_coloured: ell must be positive");
    const std::size_t n = blue.vertex_count();
    if (mode == PartitionMode::Auto) mode = n <= kExhaustivePartitionMax ? PartitionMode::Exhaustive : PartitionMode::Heuristic;
    if (mode == PartitionMode::Exhaustive && n > kExhaustivePartitionMax)
        throw DomainError("exhaustive partition is limited to " + std::to_string(kExhaustivePartitionMax) + " vertices");
    PartitionResult result = mode == PartitionMode::Exhaustive ? detail::partition_exhaustive(blue, ell)
                                                               : detail::partition_heuristic(blue, ell, seed, restarts);
    auto check = verify_partition(blue, result, ell);
    if (!check.ok) throw InternalError("partition produced an invalid cover: " + check.reason);
    return result;
}

// ---------------------------------------------------------------------------
// Long paths through prescribed parts

class HypothesisFailure : public PreconditionError {
public:
    HypothesisFailure(const std::string& what, std::vector<Vertex> x, std::vector<Vertex> y)
        : PreconditionError(what), x_(std::move(x)), y_(std::move(y)) {}
    const std::vector<Vertex>& x() const { return x_; }
    const std::vector<Vertex>& y() const { return y_; }

private:
    std::vector<Vertex> x_, y_;
};

class NoPathFound : public SearchExhausted {
public:
    NoPathFound(const std::string& what, PathWitness best) : SearchExhausted(what), best_(std::move(best)) {}
    const PathWitness& best() const { return best_; }

private:
    PathWitness best_;
};

struct LongPathOptions {
    std::optional<Rational> gamma;        // expansion parameter for the pre-check
    bool precheck = true;                 // enumerate sets of size ceil(gamma n) when feasible
    std::size_t min_part_size = 0;        // caller-supplied floor on every |V_j|
    std::uint64_t node_budget = 2'000'000;
    std::uint64_t seed = 0;
    std::size_t greedy_restarts = 16;
};

struct LongPathResult {
    PathWitness path;
    bool hypothesis_checked = false;
    std::uint64_t nodes = 0;
};

/// A path x_0 .. x_{n-1} with x_i in parts[i mod t]. Tries randomised greedy
/// growth first, then a budgeted depth-first search that memoises dead states.
inline LongPathResult long_path_through_sets(const Graph& g, const std::vector<std::vector<Vertex>>& parts,
                                             std::size_t target_len, const LongPathOptions& opt = {}) {
    const std::size_t t = parts.size();
    const std::size_t n = g.vertex_count();
    if (t == 0) throw DomainError("long_path_through_sets: need at least one part");
    std::vector<std::size_t> part_of(n, t);
    for (std::size_t j = 0; j < t; ++j) {
        if (parts[j].size() < opt.min_part_size)
            throw PreconditionError("part " + std::to_string(j) + " has " + std::to_string(parts[j].size()) +
                                    " vertices, below the floor " + std::to_string(opt.min_part_size));
        for (Vertex v : parts[j]) {
            if (v >= n) throw DomainError("part vertex out of range");
            if (part_of[v] != t) throw DomainError("parts are not disjoint");
            part_of[v] = j;
        }
    }
    LongPathResult result;
    if (opt.gamma && opt.precheck && n <= subsets::kMaxMaskVertices) {
        const auto size = static_cast<std::size_t>(to_int64(ceil(*opt.gamma * target_len)));
        if (size >= 1) {
            if (auto empty = subsets::find_empty_pair(g, size))
                throw HypothesisFailure("expansion hypothesis fails: two disjoint " + std::to_string(size) +
                                            "-sets span no edge",
                                        subsets::to_vertices(empty->first), subsets::to_vertices(empty->second));
        }
        result.hypothesis_checked = true;
    }
    auto finish = [&](std::vector<Vertex> vs) {
        std::vector<std::size_t> trace(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) trace[i] = i % t;
        return PathWitness{std::move(vs), std::move(trace)};
    };
    if (target_len == 0) {
        result.path = finish({});
        return result;
    }
    auto fits = [&](Vertex v, std::size_t pos) { return part_of[v] == pos % t; };
    std::vector<Vertex> best;

    // Greedy phase: random growth, valid rotations at dead ends.
    std::vector<char> on(n, 0);
    std::vector<Vertex> options;
    for (std::size_t attempt = 0; attempt < opt.greedy_restarts && !parts[0].empty(); ++attempt) {
        Rng rng(derive_seed(opt.seed, attempt));
        std::vector<Vertex> path{parts[0][rng.below(parts[0].size())]};
        std::fill(on.begin(), on.end(), 0);
        on[path[0]] = 1;
        std::size_t rotations = 0;
        while (path.size() < target_len) {
            options.clear();
            for (Vertex w : g.neighbours(path.back()))
                if (!on[w] && fits(w, path.size())) options.push_back(w);
            if (!options.empty()) {
                Vertex w = options[rng.below(options.size())];
                path.push_back(w);
                on[w] = 1;
                continue;
            }
            if (rotations++ > 4 * n) break;
            // Reversing path[i+1..m-1] moves position j to m+i-j; valid when every
            // moved vertex keeps its residue, i.e. t divides (m+i-2j) for all j.
            const std::size_t m = path.size();
            options.clear();
            for (std::size_t i = 0; i + 2 < m; ++i) {
                if (!g.has_edge(path[i], path.back())) continue;
                bool valid = true;
                for (std::size_t j = i + 1; j < m && valid; ++j) valid = fits(path[j], m + i - j);
                if (valid) options.push_back(static_cast<Vertex>(i));
            }
            if (options.empty()) break;
            std::size_t i = options[rng.below(options.size())];
            std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
        }
        if (path.size() > best.size()) best = path;
        if (best.size() >= target_len) {
            result.path = finish(std::move(best));
            return result;
        }
    }

    // Exhaustive phase: depth-first search over part-respecting extensions.
    struct Key {
        std::vector<std::uint64_t> used;
        Vertex last;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = splitmix64(k.last);
            for (auto w : k.used) h = splitmix64(h ^ w);
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_set<Key, KeyHash> dead;
    std::vector<std::uint64_t> used((n + 63) / 64, 0);
    std::vector<Vertex> path;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;
    auto dfs = [&](auto&& self) -> bool {
        if (path.size() > best.size()) best = path;
        if (path.size() >= target_len) return true;
        if (++nodes > opt.node_budget) {
            out_of_budget = true;
            return false;
        }
        Key key{used, path.back()};
        if (dead.count(key)) return false;
        std::vector<Vertex> next;
        for (Vertex w : g.neighbours(path.back()))
            if (!(used[w / 64] >> (w % 64) & 1) && fits(w, path.size())) next.push_back(w);
        // Fewest onward options first.
        auto onward = [&](Vertex w) {
            std::size_t c = 0;
            for (Vertex x : g.neighbours(w))
                if (!(used[x / 64] >> (x % 64) & 1) && x != w && fits(x, path.size() + 1)) ++c;
            return c;
        };
        std::vector<std::pair<std::size_t, Vertex>> ranked;
        for (Vertex w : next) ranked.push_back({onward(w), w});
        std::sort(ranked.begin(), ranked.end());
        for (auto [score, w] : ranked) {
            used[w / 64] |= std::uint64_t{1} << (w % 64);
            path.push_back(w);
            bool ok = self(self);
            if (ok) return true;
            path.pop_back();
            used[w / 64] &= ~(std::uint64_t{1} << (w % 64));
            if (out_of_budget) return false;
        }
        dead.insert(std::move(key));
        return false;
    };
    for (Vertex s : parts[0]) {
        used.assign(used.size(), 0);
        used[s / 64] |= std::uint64_t{1} << (s % 64);
        path.assign(1, s);
        if (dfs(dfs)) {
            result.path = finish(path);
            result.nodes = nodes;
            return result;
        }
        if (out_of_budget) break;
    }
    result.nodes = nodes;
    std::string why = out_of_budget ? "search budget exhausted" : "no such path exists";
    throw NoPathFound(why + "; longest constrained path has " + std::to_string(best.size()) + " of " +
                          std::to_string(target_len) + " vertices",
                      finish(best));
}

// ---------------------------------------------------------------------------
// Segments and the auxiliary graph

struct Segment {
    std::size_t index = 0;
    std::vector<Vertex> vertices;
};

inline std::vector<Segment> segment_path(const PathWitness& path, std::size_t t) {
    if (t == 0) throw DomainError("segment_path: t must be positive");
    if (path.vertices.size() % t != 0)
        throw DomainError("segment_path: path length " + std::to_string(path.vertices.size()) + " is not divisible by " +
                          std::to_string(t));
    std::vector<Segment> out;
    for (std::size_t i = 0; i * t < path.vertices.size(); ++i)
        out.push_back({i, std::vector<Vertex>(path.vertices.begin() + static_cast<std::ptrdiff_t>(i * t),
                                              path.vertices.begin() + static_cast<std::ptrdiff_t>((i + 1) * t))});
    return out;
}

/// Graph on segment indices, joining two segments when some edge of g runs between them.
inline Graph auxiliary_graph(const Graph& g, const std::vector<Segment>& segments) {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(g.vertex_count(), none);
    for (std::size_t i = 0; i < segments.size(); ++i)
        for (Vertex v : segments[i].vertices) {
            if (v >= g.vertex_count()) throw DomainError("auxiliary_graph: segment vertex out of range");
            if (owner[v] != none) throw DomainError("auxiliary_graph: segments overlap at vertex " + std::to_string(v));
            owner[v] = i;
        }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        std::size_t a = owner[e.u], b = owner[e.v];
        if (a == none || b == none || a == b) continue;
        edges.push_back(make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)));
    }
    return Graph(segments.size(), edges);
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_PATHS_HPP
