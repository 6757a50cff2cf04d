#ifndef SIZERAMSEY_COLOURING_HPP
#define SIZERAMSEY_COLOURING_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "sizeramsey/blowup.hpp"
#include "sizeramsey/edge_colouring.hpp"
#include "sizeramsey/embedding.hpp"
#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/paths.hpp"
#include "sizeramsey/rational.hpp"
#include "sizeramsey/rng.hpp"
#include "sizeramsey/subgraph.hpp"

namespace sizeramsey {

using Bits = boost::dynamic_bitset<>;

// ---------------------------------------------------------------------------
// Monochromatic cliques inside a clique

struct MonoClique {
    Colour colour = 1;
    std::vector<Vertex> vertices;
};

namespace detail {

// Lexicographically first clique of exactly `size` vertices in the graph given
// by adjacency rows over indices 0..n-1.
inline std::optional<std::vector<std::size_t>> find_clique(const std::vector<Bits>& adj, std::size_t size) {
    const std::size_t n = adj.size();
    if (size == 0) return std::vector<std::size_t>{};
    if (size > n) return std::nullopt;
    std::vector<std::size_t> chosen;
    auto grow = [&](auto&& self, const Bits& cand) -> bool {
        if (chosen.size() == size) return true;
        if (chosen.size() + cand.count() < size) return false;
        for (std::size_t v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
            Bits next = cand & adj[v];
            // Only later vertices, so each clique is met once in increasing order.
            for (std::size_t w = next.find_first(); w != Bits::npos && w <= v; w = next.find_next(w)) next.reset(w);
            chosen.push_back(v);
            if (self(self, next)) return true;
            chosen.pop_back();
        }
        return false;
    };
    Bits all(n);
    all.set();
    if (grow(grow, all)) return chosen;
    return std::nullopt;
}

}  // namespace detail

/// A clique of exactly `target` vertices, monochromatic under chi, inside the
/// given host clique. Tries colours 1..s in order. nullopt when none exists.
inline std::optional<MonoClique> mono_clique_in_clique(const EdgeColouring& chi, const std::vector<Vertex>& clique,
                                                       std::size_t target) {
    const std::size_t n = clique.size();
    if (target > n) throw DomainError("mono_clique_in_clique: target exceeds clique size");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!chi.host().has_edge(clique[i], clique[j])) throw PreconditionError("mono_clique_in_clique: input is not a clique");
    if (target <= 1) {
        MonoClique mc;
        if (target == 1) mc.vertices.push_back(clique[0]);
        return mc;
    }
    for (Colour c = 1; c <= chi.colour_count(); ++c) {
        std::vector<Bits> adj(n, Bits(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (chi.colour_of(clique[i], clique[j]) == c) adj[i].set(j), adj[j].set(i);
        if (auto found = detail::find_clique(adj, target)) {
            MonoClique mc{c, {}};
            for (std::size_t idx : *found) mc.vertices.push_back(clique[idx]);
            return mc;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bicliques and the KST bound

struct Biclique {
    std::vector<Vertex> left;
    std::vector<Vertex> right;
};

namespace detail {

// Lexicographically first `a` rows whose common neighbourhood has >= b columns.
inline std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> find_biclique_rows(
    const std::vector<Bits>& rows, std::size_t columns, std::size_t a, std::size_t b) {
    if (a == 0 || b == 0 || rows.size() < a || columns < b) return std::nullopt;
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> cols;
    auto grow = [&](auto&& self, std::size_t from, const Bits& common) -> bool {
        if (chosen.size() == a) {
            for (std::size_t c = common.find_first(); c != Bits::npos && cols.size() < b; c = common.find_next(c)) cols.push_back(c);
            return true;
        }
        for (std::size_t r = from; r + (a - chosen.size()) <= rows.size(); ++r) {
            Bits next = common & rows[r];
            if (next.count() < b) continue;
            chosen.push_back(r);
            if (self(self, r + 1, next)) return true;
            chosen.pop_back();
        }
        return false;
    };
    Bits all(columns);
    all.set();
    if (grow(grow, 0, all)) return std::make_pair(chosen, cols);
    return std::nullopt;
}

}  // namespace detail

/// A 2k x 2k biclique between `left` and `right` all of whose pairs are host
/// edges coloured `blue`. Missing host pairs count as absent.
inline std::optional<Biclique> find_blue_biclique(const EdgeColouring& chi, const std::vector<Vertex>& left,
                                                  const std::vector<Vertex>& right, std::size_t k, Colour blue) {
    if (k == 0) throw DomainError("find_blue_biclique: k must be positive");
    std::vector<Bits> rows(left.size(), Bits(right.size()));
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
            if (chi.has_colour(left[i], right[j], blue)) rows[i].set(j);
    auto found = detail::find_biclique_rows(rows, right.size(), 2 * k, 2 * k);
    if (!found) return std::nullopt;
    Biclique out;
    for (std::size_t i : found->first) out.left.push_back(left[i]);
    for (std::size_t j : found->second) out.right.push_back(right[j]);
    return out;
}

struct KstReport {
    std::size_t x = 0;
    std::size_t k = 1;
    std::size_t edges = 0;
    bool contains_biclique = false;      // bound does not apply when true
    bool within_bound = true;            // edges <= 4 x^{2 - 1/(2k)} (exact)
    double bound = 0;                    // display only
    double margin = 0;                   // display only: bound - edges
    std::optional<Biclique> witness;
};

// edges <= 4 x^{2 - 1/(2k)}  <=>  edges^{2k} <= 4^{2k} x^{4k - 1}, compared exactly.
inline bool kst_within_bound(std::size_t edges, std::size_t x, std::size_t k) {
    BigInt lhs = boost::multiprecision::pow(BigInt(edges), static_cast<unsigned>(2 * k));
    BigInt rhs = boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(2 * k)) *
                 boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(4 * k - 1));
    return lhs <= rhs;
}

/// `bip` has 2x vertices, sides {0..x-1} and {x..2x-1}, and no edge inside a side.
inline KstReport kst_bound_check(const Graph& bip, std::size_t x, std::size_t k) {
    if (k == 0) throw DomainError("kst_bound_check: k must be positive");
    if (bip.vertex_count() != 2 * x) throw DomainError("kst_bound_check: expected 2x vertices");
    KstReport r;
    r.x = x;
    r.k = k;
    r.edges = bip.edge_count();
    std::vector<Bits> rows(x, Bits(x));
    for (const Edge& e : bip.edges()) {
        if ((e.u < x) == (e.v < x)) throw DomainError("kst_bound_check: edge inside a side");
        rows[e.u].set(e.v - x);
    }
    r.bound = 4.0 * std::pow(static_cast<double>(x), 2.0 - 1.0 / (2.0 * static_cast<double>(k)));
    r.margin = r.bound - static_cast<double>(r.edges);
    if (auto found = detail::find_biclique_rows(rows, x, 2 * k, 2 * k)) {
        r.contains_biclique = true;
        Biclique w;
        for (auto i : found->first) w.left.push_back(static_cast<Vertex>(i));
        for (auto j : found->second) w.right.push_back(static_cast<Vertex>(j + x));
        r.witness = std::move(w);
        return r;
    }
    r.within_bound = kst_within_bound(r.edges, x, k);
    return r;
}

struct KstSweep {
    std::size_t x = 0;
    std::size_t k = 1;
    std::uint64_t examined = 0;          // complete row multisets plus cut branches
    std::uint64_t free_graphs = 0;       // K_{2k,2k}-free among them
    std::uint64_t violations = 0;
    std::size_t max_free_edges = 0;
};

/// Every bipartite graph with x <= 16 vertices per side, up to permutation of
/// the rows (rows listed in nondecreasing bitmask order). Branches that
/// already contain K_{2k,2k} are cut, since adding rows cannot remove it.
inline KstSweep kst_exhaustive_sweep(std::size_t x, std::size_t k) {
    if (x == 0 || x > 16) throw DomainError("kst_exhaustive_sweep: x must lie in 1..16");
    if (k == 0) throw DomainError("kst_exhaustive_sweep: k must be positive");
    KstSweep sweep;
    sweep.x = x;
    sweep.k = k;
    const std::uint32_t limit = std::uint32_t{1} << x;
    const std::size_t a = 2 * k;
    std::vector<std::uint32_t> rows;
    // Does adding `row` complete a K_{a,a} with a-1 earlier rows?
    auto closes = [&](std::uint32_t row) {
        if (static_cast<std::size_t>(std::popcount(row)) < a) return false;
        auto pick = [&](auto&& self, std::size_t from, std::size_t left, std::uint32_t common) -> bool {
            if (static_cast<std::size_t>(std::popcount(common)) < a) return false;
            if (left == 0) return true;
            for (std::size_t i = from; i < rows.size(); ++i)
                if (self(self, i + 1, left - 1, common & rows[i])) return true;
            return false;
        };
        return pick(pick, 0, a - 1, row);
    };
    auto rec = [&](auto&& self, std::uint32_t min_row, std::size_t edges) -> void {
        if (rows.size() == x) {
            ++sweep.examined;
            ++sweep.free_graphs;
            sweep.max_free_edges = std::max(sweep.max_free_edges, edges);
            if (!kst_within_bound(edges, x, k)) ++sweep.violations;
            return;
        }
        for (std::uint32_t row = min_row; row < limit; ++row) {
            if (closes(row)) {
                ++sweep.examined;
                continue;
            }
            rows.push_back(row);
            self(self, row, edges + static_cast<std::size_t>(std::popcount(row)));
            rows.pop_back();
        }
    };
    rec(rec, 0, 0);
    return sweep;
}

// ---------------------------------------------------------------------------
// The auxiliary blue/grey colouring

enum class AuxLabel : Colour { Blue = 1, Grey = 2 };

struct AuxColouring {
    Graph base;                                  // the graph J
    std::vector<Vertex> origin;                  // J vertex -> base vertex of the blow-up
    std::vector<AuxLabel> label;                 // per canonical J edge
    std::vector<std::optional<Biclique>> witness;// blue edges: left in B(origin[u]), right in B(origin[v]), u < v
    Colour blue = 1;
    std::size_t k = 1;

    EdgeColouring as_edge_colouring() const {
        std::vector<Colour> cs;
        for (AuxLabel l : label) cs.push_back(static_cast<Colour>(l));
        return EdgeColouring(base, 2, std::move(cs));
    }
    bool is_blue(Vertex u, Vertex v) const {
        auto idx = base.edge_index(u, v);
        return idx && label[*idx] == AuxLabel::Blue;
    }
};

/// Labels each edge {u,v} of J blue when some 2k x 2k biclique between the
/// subcliques B(origin[u]) and B(origin[v]) is entirely `blue` under chi, and
/// grey otherwise.
inline AuxColouring build_aux_colouring(const Graph& j, const std::vector<Vertex>& origin, const BlowupMap& map,
                                        const EdgeColouring& chi, std::size_t k, Colour blue) {
    if (origin.size() != j.vertex_count()) throw DomainError("build_aux_colouring: origin size mismatch");
    if (!map.subclique) throw PreconditionError("build_aux_colouring: blow-up map has no subcliques");
    const auto& sub = *map.subclique;
    for (Vertex v = 0; v < j.vertex_count(); ++v) {
        if (origin[v] >= sub.size()) throw DomainError("build_aux_colouring: origin out of range");
        const auto& b = sub[origin[v]];
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y)
                if (!chi.has_colour(b[x], b[y], blue))
                    throw PreconditionError("build_aux_colouring: subclique of J vertex " + std::to_string(v) +
                                            " is not monochromatic in colour " + std::to_string(blue));
    }
    AuxColouring aux{j, origin, {}, {}, blue, k};
    for (const Edge& e : j.edges()) {
        auto w = find_blue_biclique(chi, sub[origin[e.u]], sub[origin[e.v]], k, blue);
        aux.label.push_back(w ? AuxLabel::Blue : AuxLabel::Grey);
        aux.witness.push_back(std::move(w));
    }
    return aux;
}

// Every stored witness has 2k + 2k vertices inside the right subcliques and all
// 4k^2 cross pairs blue.
inline std::optional<std::string> check_aux_witnesses(const AuxColouring& aux, const BlowupMap& map, const EdgeColouring& chi) {
    const auto& sub = *map.subclique;
    for (std::size_t idx = 0; idx < aux.label.size(); ++idx) {
        const Edge& e = aux.base.edges()[idx];
        const auto& w = aux.witness[idx];
        if ((aux.label[idx] == AuxLabel::Blue) != w.has_value()) return "label and witness disagree on J edge " + std::to_string(idx);
        if (!w) continue;
        if (w->left.size() != 2 * aux.k || w->right.size() != 2 * aux.k) return "witness of wrong size";
        const auto& bu = sub[aux.origin[e.u]];
        const auto& bv = sub[aux.origin[e.v]];
        for (Vertex x : w->left)
            if (std::find(bu.begin(), bu.end(), x) == bu.end()) return "witness leaves B(u)";
        for (Vertex y : w->right)
            if (std::find(bv.begin(), bv.end(), y) == bv.end()) return "witness leaves B(v)";
        for (Vertex x : w->left)
            for (Vertex y : w->right)
                if (!chi.has_colour(x, y, aux.blue)) return "witness pair is not a blue host edge";
    }
    return std::nullopt;
}

/// From a blue path w_0..w_{n-1} in J, a blue copy of P_{2kn}^k in the host:
/// blocks X'_0, Y'_1, X'_1, ..., X'_{n-2}, Y'_{n-1} where Y'_i is the k lowest
/// of Y_i and X'_i the k lowest of X_i \ Y'_i (end blocks keep all 2k).
inline Embedding blue_path_to_blue_power(const PathWitness& blue_path, const AuxColouring& aux, const BlowupMap& map,
                                         const EdgeColouring& chi) {
    const auto& w = blue_path.vertices;
    const std::size_t k = aux.k;
    const std::size_t n = w.size();
    if (n == 0) throw PreconditionError("blue_path_to_blue_power: empty path");
    if (!map.subclique) throw PreconditionError("blue_path_to_blue_power: blow-up map has no subcliques");
    std::vector<Vertex> order;
    if (n == 1) {
        const auto& b = (*map.subclique)[aux.origin[w[0]]];
        if (b.size() < 2 * k) throw PreconditionError("blue_path_to_blue_power: subclique smaller than 2k");
        order.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(2 * k));
    } else {
        // xs[i] ⊆ B(w_i) faces w_{i+1}; ys[i] ⊆ B(w_i) faces w_{i-1}.
        std::vector<std::vector<Vertex>> xs(n), ys(n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            auto idx = aux.base.edge_index(w[i], w[i + 1]);
            if (!idx) throw PreconditionError("blue_path_to_blue_power: consecutive path vertices are not adjacent in J");
            if (aux.label[*idx] != AuxLabel::Blue || !aux.witness[*idx])
                throw PreconditionError("blue_path_to_blue_power: J edge {" + std::to_string(w[i]) + "," +
                                        std::to_string(w[i + 1]) + "} is grey");
            const Biclique& b = *aux.witness[*idx];
            bool forward = w[i] < w[i + 1];
            xs[i] = forward ? b.left : b.right;
            ys[i + 1] = forward ? b.right : b.left;
            std::sort(xs[i].begin(), xs[i].end());
            std::sort(ys[i + 1].begin(), ys[i + 1].end());
        }
        order.insert(order.end(), xs[0].begin(), xs[0].end());
        for (std::size_t i = 1; i + 1 < n; ++i) {
            std::vector<Vertex> y_part(ys[i].begin(), ys[i].begin() + static_cast<std::ptrdiff_t>(k));
            std::vector<Vertex> x_part;
            for (Vertex v : xs[i])
                if (x_part.size() < k && std::find(y_part.begin(), y_part.end(), v) == y_part.end()) x_part.push_back(v);
            if (x_part.size() != k) throw InternalError("blue_path_to_blue_power: cannot split a witness side");
            order.insert(order.end(), y_part.begin(), y_part.end());
            order.insert(order.end(), x_part.begin(), x_part.end());
        }
        order.insert(order.end(), ys[n - 1].begin(), ys[n - 1].end());
    }
    Embedding e{path_power(order.size(), k), chi.host(), order, ColourConstraint{chi, {aux.blue}}};
    auto check = validate_embedding(e);
    if (!check.ok) throw InternalError("blue_path_to_blue_power produced an invalid embedding: " + check.reason);
    return e;
}

// ---------------------------------------------------------------------------
// Arrowing

enum class ArrowResult { Arrows, DoesNotArrow, NoCounterexampleFound };

inline const char* to_string(ArrowResult r) {
    switch (r) {
        case ArrowResult::Arrows: return "arrows";
        case ArrowResult::DoesNotArrow: return "does-not-arrow";
        case ArrowResult::NoCounterexampleFound: return "no-counterexample-found";
    }
    return "?";
}

struct ArrowVerdict {
    ArrowResult result = ArrowResult::Arrows;
    std::optional<EdgeColouring> counterexample;
    std::optional<std::uint64_t> counterexample_index;   // exhaustive mode
    std::uint64_t searched = 0;                          // colourings examined
    bool exhaustive = true;

    bool arrows() const { return result == ArrowResult::Arrows; }
};

struct ArrowMode {
    enum class Kind { Exhaustive, Randomized };
    Kind kind = Kind::Exhaustive;
    std::uint64_t budget = std::uint64_t{1} << 24;
    std::size_t threads = 0;          // 0: hardware concurrency
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;

    static ArrowMode exhaustive(std::uint64_t budget = std::uint64_t{1} << 24) { return {Kind::Exhaustive, budget, 0, 0, 0}; }
    static ArrowMode randomized(std::uint64_t trials, std::uint64_t seed) {
        return {Kind::Randomized, std::uint64_t{1} << 24, 0, trials, seed};
    }
};

class BudgetExceeded : public InfeasibleError {
public:
    using InfeasibleError::InfeasibleError;
};

// The colouring with the given index: base-s digits, edge 0 most significant.
inline EdgeColouring colouring_from_index(const Graph& host, std::size_t s, std::uint64_t index) {
    std::vector<Colour> cs(host.edge_count());
    for (std::size_t i = cs.size(); i-- > 0;) {
        cs[i] = static_cast<Colour>(index % s + 1);
        index /= s;
    }
    return EdgeColouring(host, s, std::move(cs));
}

inline bool has_mono_copy(const EdgeColouring& chi, const Graph& pattern, const std::vector<Vertex>& order) {
    for (Colour c = 1; c <= chi.colour_count(); ++c)
        if (find_subgraph(chi.host(), pattern, ColourClass{&chi, c}, order)) return true;
    return false;
}

/// host -> (pattern)_s. Exhaustive mode enumerates colourings in index order
/// (edge 0 fixed to colour 1, which keeps the lowest-index counterexample) and
/// reports the lowest-index counterexample. Randomized mode can only refute.
inline ArrowVerdict arrow_check(const Graph& host, const Graph& pattern, std::size_t s, const ArrowMode& mode = {}) {
    if (s == 0) throw DomainError("arrow_check: need at least one colour");
    const std::size_t m = host.edge_count();
    const auto order = search_order(pattern);
    ArrowVerdict verdict;
    if (s == 1 || m == 0) {
        verdict.searched = 1;
        EdgeColouring only = EdgeColouring::constant(host, s, 1);
        if (!has_mono_copy(only, pattern, order)) {
            verdict.result = ArrowResult::DoesNotArrow;
            verdict.counterexample = only;
            verdict.counterexample_index = 0;
        }
        return verdict;
    }
    if (mode.kind == ArrowMode::Kind::Randomized) {
        verdict.exhaustive = false;
        verdict.result = ArrowResult::NoCounterexampleFound;
        Rng rng(mode.seed);
        std::vector<Colour> cs(m);
        for (std::uint64_t trial = 0; trial < mode.trials; ++trial) {
            for (auto& c : cs) c = static_cast<Colour>(rng.below(s) + 1);
            EdgeColouring chi(host, s, cs);
            ++verdict.searched;
            if (!has_mono_copy(chi, pattern, order)) {
                verdict.result = ArrowResult::DoesNotArrow;
                verdict.counterexample = std::move(chi);
                return verdict;
            }
        }
        return verdict;
    }
    // Total with edge 0 fixed: s^(m-1).
    std::uint64_t total = 1;
    for (std::size_t i = 1; i < m; ++i) {
        if (total > mode.budget / s) {
            throw BudgetExceeded("arrow_check: s^(m-1) = " + to_string(boost::multiprecision::pow(BigInt(s), static_cast<unsigned>(m - 1))) +
                                 " colourings exceed the budget " + std::to_string(mode.budget));
        }
        total *= s;
    }
    const std::size_t workers = std::max<std::size_t>(1, mode.threads ? mode.threads : std::thread::hardware_concurrency());
    constexpr std::uint64_t chunk = 1 << 12;
    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::atomic<std::uint64_t> searched{0};
    auto work = [&]() {
        std::vector<Colour> cs(m);
        std::uint64_t local = 0;
        for (;;) {
            std::uint64_t start = next_chunk.fetch_add(1) * chunk;
            if (start >= total || start > best.load()) break;
            std::uint64_t end = std::min(total, start + chunk);
            for (std::uint64_t idx = start; idx < end && idx < best.load(); ++idx) {
                std::uint64_t rest = idx;
                for (std::size_t i = m; i-- > 1;) {
                    cs[i] = static_cast<Colour>(rest % s + 1);
                    rest /= s;
                }
                cs[0] = 1;
                ++local;
                if (!has_mono_copy(EdgeColouring(host, s, cs), pattern, order)) {
                    std::uint64_t cur = best.load();
                    while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                    }
                    break;
                }
            }
        }
        searched.fetch_add(local);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    verdict.searched = searched.load();
    if (best.load() != std::numeric_limits<std::uint64_t>::max()) {
        verdict.result = ArrowResult::DoesNotArrow;
        verdict.counterexample_index = best.load();
        verdict.counterexample = colouring_from_index(host, s, best.load());
    }
    return verdict;
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_COLOURING_HPP
