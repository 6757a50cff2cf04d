#ifndef SIZERAMSEY_EMBEDDER_HPP
#define SIZERAMSEY_EMBEDDER_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sizeramsey/blowup.hpp"
#include "sizeramsey/class_p.hpp"
#include "sizeramsey/colouring.hpp"
#include "sizeramsey/edge_colouring.hpp"
#include "sizeramsey/embedding.hpp"
#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/paths.hpp"
#include "sizeramsey/rational.hpp"
#include "sizeramsey/rng.hpp"

namespace sizeramsey {

// ===========================================================================
// Constants of the induction step

inline constexpr std::uint64_t kExactPowerBitLimit = 1'000'000;

struct ConstantsChain {
    std::size_t k = 1, s = 1, r = 1, t = 1;
    GoodQuadruple quad;
    Rational d0;
    bool input_good = false;

    BigInt t_prime;     // ceil(b^{2rk} t^{2k})
    Rational A, C, delta, B;
    std::size_t R = 0;  // t r
    Rational gamma;     // 1 / (2t)

    BigInt log_s_T;                 // s * T'
    std::optional<BigInt> T;        // s^{s T'} when it fits in the bit limit
    BigInt T_decimal_digits;        // exact when T is present
    bool T_digits_exact = false;

    GoodQuadruple derived() const { return {A, B, C, delta}; }
    GoodnessReport derived_goodness;
};

namespace detail {

inline std::size_t bit_length(std::size_t v) {
    std::size_t bits = 0;
    while (v) {
        ++bits;
        v >>= 1;
    }
    return bits;
}

// Decimal digits of s^e for s >= 2, using 100-digit binary floats.
inline BigInt power_decimal_digits(std::size_t s, const BigInt& e) {
    using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;
    Float value = Float(e) * boost::multiprecision::log10(Float(s));
    BigInt whole = value.convert_to<BigInt>();
    return whole + 1;
}

}  // namespace detail

inline ConstantsChain constants_chain(std::size_t k, std::size_t s, std::size_t r, std::size_t t, const GoodQuadruple& quad,
                                      const Rational& d0, bool require_good_input = true) {
    if (k == 0 || s == 0 || r == 0 || t == 0) throw DomainError("constants_chain: k, s, r, t must be positive");
    if (d0 <= 0) throw DomainError("constants_chain: d0 must be positive");
    ConstantsChain ch;
    ch.k = k;
    ch.s = s;
    ch.r = r;
    ch.t = t;
    ch.quad = quad;
    ch.d0 = d0;
    GoodnessReport input = is_good(quad);
    ch.input_good = input.good;
    if (require_good_input && !input.good) throw DomainError("constants_chain: quadruple is not good: " + input.failures.front());

    const unsigned e = static_cast<unsigned>(2 * r * k);
    Rational tp(boost::multiprecision::pow(numerator(quad.b), e), boost::multiprecision::pow(denominator(quad.b), e));
    tp *= Rational(boost::multiprecision::pow(BigInt(t), static_cast<unsigned>(2 * k)));
    ch.t_prime = ceil(tp);
    const Rational st = Rational(s) * t;
    ch.A = 2 * d0 * (quad.a + 1) * st;
    Rational first = Rational(1) / (2 * st);
    Rational second = quad.eps * quad.eps * quad.c * quad.c / (240 * quad.a);
    ch.C = first < second ? first : second;
    ch.R = t * r;
    ch.delta = quad.eps / 2;
    ch.B = 264 * ch.A * ch.A / (ch.delta * ch.delta * ch.C * ch.C);
    ch.gamma = Rational(1) / (2 * t);

    ch.log_s_T = BigInt(s) * ch.t_prime;
    if (s == 1) {
        ch.T = BigInt(1);
    } else if (ch.log_s_T * detail::bit_length(s) <= kExactPowerBitLimit) {
        ch.T = boost::multiprecision::pow(BigInt(s), ch.log_s_T.convert_to<unsigned>());
    }
    if (ch.T) {
        ch.T_decimal_digits = BigInt(ch.T->str().size());
        ch.T_digits_exact = true;
    } else {
        ch.T_decimal_digits = detail::power_decimal_digits(s, ch.log_s_T);
    }
    ch.derived_goodness = is_good(ch.derived());
    if (require_good_input && !ch.derived_goodness.good)
        throw DomainError("constants_chain: derived quadruple is not good: " + ch.derived_goodness.failures.front());
    return ch;
}

// ===========================================================================
// Base case: greedy embedding of P_n^k into a blow-up of a power

// The host's base must contain every pair of path vertices at distance <= k
// along the path, and every clique must have at least k + 1 vertices.
inline Embedding embed_base_case(const Blowup& host, std::size_t k, const PathWitness& path) {
    const auto& vs = path.vertices;
    const BlowupMap& map = host.map;
    const std::size_t n = vs.size();
    if (k == 0) throw DomainError("embed_base_case: k must be positive");
    if (n == 0) throw PreconditionError("embed_base_case: empty path");
    if (map.t < k + 1) throw PreconditionError("embed_base_case: cliques have " + std::to_string(map.t) + " < k+1 vertices");
    std::vector<char> seen(map.base.vertex_count(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (vs[i] >= map.base.vertex_count() || seen[vs[i]]) throw PreconditionError("embed_base_case: path vertices must be distinct base vertices");
        seen[vs[i]] = 1;
        for (std::size_t j = i >= k ? i - k : 0; j < i; ++j)
            if (!map.base.has_edge(vs[j], vs[i]))
                throw PreconditionError("embed_base_case: path vertices " + std::to_string(vs[j]) + "," + std::to_string(vs[i]) +
                                        " are not adjacent in the host's base graph");
    }
    std::vector<Vertex> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t from = i >= k ? i - k : 0;
        std::optional<Vertex> pick;
        for (Vertex x : map.clique_of[vs[i]]) {
            bool ok = true;
            for (std::size_t j = from; j < i && ok; ++j) ok = host.host.has_edge(w[j], x);
            if (ok) {
                pick = x;
                break;
            }
        }
        if (!pick) throw InternalError("embed_base_case: no candidate in C(" + std::to_string(vs[i]) + "); host matchings are inconsistent");
        w.push_back(*pick);
    }
    Embedding e{path_power(n, k), host.host, std::move(w), std::nullopt};
    auto check = validate_embedding(e);
    if (!check.ok) throw InternalError("embed_base_case: output failed validation: " + check.reason);
    return e;
}

// Builds G^k{k+1} and embeds along a path of g.
struct BaseCaseEmbedding {
    Blowup host;
    Embedding embedding;
};

inline BaseCaseEmbedding embed_base_case(const Graph& g, std::size_t k, const PathWitness& path) {
    if (auto bad = check_path(g, path)) throw PreconditionError("embed_base_case: " + *bad);
    Blowup host = sheared_blowup(power(g, k), k + 1);
    Embedding e = embed_base_case(host, k, path);
    return {std::move(host), std::move(e)};
}

// ===========================================================================
// Template containment and the grey copy

struct SegmentPairDistance {
    std::size_t i = 0, j = 0;          // h vertices
    std::size_t h_distance = 0;
    std::size_t max_base_distance = 0; // over all representative pairs
    std::size_t argument_bound = 0;    // (t-1)(d+1) + d
    bool within_R = false;
};

struct TemplateOptions {
    std::optional<std::size_t> R;        // defaults to t r
    const AuxColouring* aux = nullptr;   // extract a grey copy when given
    const Graph* base = nullptr;         // graph whose R-th power is J, for the distance report
};

struct TemplateReport {
    bool ok = false;
    std::string failure;
    std::optional<std::pair<Vertex, Vertex>> offending;   // J vertices
    std::size_t R = 0;
    std::vector<SegmentPairDistance> distances;
    bool argument_bound_holds = true;

    // Template vertex i * t + j is position j of the segment realising h vertex i.
    Graph template_graph;
    std::vector<Vertex> origin;                           // template vertex -> J vertex
    std::vector<std::vector<HostPair>> removed;           // per h^r edge, template vertex pairs
    std::optional<Embedding> embedding;                   // template -> J
};

inline TemplateReport check_template_containment(const Graph& h, std::size_t r, std::size_t t, const std::vector<Segment>& segments,
                                                 const Graph& j_graph, const TemplateOptions& opt = {}) {
    if (t == 0 || r == 0) throw DomainError("check_template_containment: r and t must be positive");
    if (segments.size() != h.vertex_count()) throw DomainError("check_template_containment: need one segment per h vertex");
    TemplateReport rep;
    rep.R = opt.R.value_or(t * r);
    std::vector<char> used(j_graph.vertex_count(), 0);
    for (const auto& seg : segments) {
        if (seg.vertices.size() != t) throw DomainError("check_template_containment: segment of size " + std::to_string(seg.vertices.size()));
        for (Vertex v : seg.vertices) {
            if (v >= j_graph.vertex_count()) throw DomainError("check_template_containment: segment vertex outside J");
            if (used[v]) throw DomainError("check_template_containment: segments overlap at J vertex " + std::to_string(v));
            used[v] = 1;
            rep.origin.push_back(v);
        }
    }
    const std::size_t m = h.vertex_count();
    auto fail = [&](std::string why, Vertex x, Vertex y) {
        rep.ok = false;
        rep.failure = std::move(why);
        rep.offending = std::make_pair(x, y);
        return rep;
    };

    // Segments span cliques of J, grey ones when a colouring is given.
    for (const auto& seg : segments)
        for (std::size_t a = 0; a < t; ++a)
            for (std::size_t b = a + 1; b < t; ++b) {
                Vertex x = seg.vertices[a], y = seg.vertices[b];
                if (!j_graph.has_edge(x, y)) return fail("segment " + std::to_string(seg.index) + " does not span a clique of J", x, y);
                if (opt.aux && opt.aux->is_blue(x, y))
                    return fail("segment " + std::to_string(seg.index) + " has a blue edge inside", x, y);
            }

    std::vector<std::vector<std::size_t>> hdist(m);
    for (Vertex i = 0; i < m; ++i) hdist[i] = distances(h, i);
    std::vector<std::vector<std::size_t>> bdist;
    if (opt.base) {
        if (opt.base->vertex_count() != j_graph.vertex_count()) throw DomainError("check_template_containment: base and J differ in size");
        bdist.assign(j_graph.vertex_count(), {});
        for (const auto& seg : segments)
            for (Vertex v : seg.vertices) bdist[v] = distances(*opt.base, v);
    }

    std::vector<Edge> edges;
    auto tv = [t](std::size_t seg, std::size_t pos) { return static_cast<Vertex>(seg * t + pos); };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < t; ++a)
            for (std::size_t b = a + 1; b < t; ++b) edges.push_back({tv(i, a), tv(i, b)});

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t jj = i + 1; jj < m; ++jj) {
            const std::size_t d = hdist[i][jj];
            if (d == kUnreachable || d > r) continue;
            const auto& qi = segments[i].vertices;
            const auto& qj = segments[jj].vertices;
            if (opt.base) {
                SegmentPairDistance pd{i, jj, d, 0, (t - 1) * (d + 1) + d, false};
                for (Vertex x : qi)
                    for (Vertex y : qj) pd.max_base_distance = std::max(pd.max_base_distance, bdist[x][y]);
                pd.within_R = pd.max_base_distance <= rep.R;
                if (pd.max_base_distance > pd.argument_bound) rep.argument_bound_holds = false;
                rep.distances.push_back(pd);
            }
            for (Vertex x : qi)
                for (Vertex y : qj)
                    if (!j_graph.has_edge(x, y))
                        return fail("segments " + std::to_string(i) + " and " + std::to_string(jj) + " at h-distance " +
                                        std::to_string(d) + " are not completely joined in J (R=" + std::to_string(rep.R) + ")",
                                    x, y);
            // Positions (a, b) whose J edge is not grey must form a matching.
            std::vector<std::size_t> mate_of_a(t, t), mate_of_b(t, t);
            if (opt.aux) {
                for (std::size_t a = 0; a < t; ++a)
                    for (std::size_t b = 0; b < t; ++b) {
                        if (!opt.aux->is_blue(qi[a], qj[b])) continue;
                        if (mate_of_a[a] != t || mate_of_b[b] != t)
                            return fail("non-grey pairs between segments " + std::to_string(i) + " and " + std::to_string(jj) +
                                            " do not form a matching",
                                        qi[a], qj[b]);
                        mate_of_a[a] = b;
                        mate_of_b[b] = a;
                    }
            }
            bool aligned = true;
            for (std::size_t a = 0; a < t; ++a)
                if (mate_of_a[a] != t && mate_of_a[a] != a) aligned = false;
            if (aligned) {
                for (std::size_t a = 0; a < t; ++a) mate_of_a[a] = a;
            } else {
                std::size_t next_b = 0;
                for (std::size_t a = 0; a < t; ++a) {
                    if (mate_of_a[a] != t) continue;
                    while (mate_of_b[next_b] != t) ++next_b;
                    mate_of_a[a] = next_b;
                    mate_of_b[next_b] = a;
                }
            }
            std::vector<HostPair> removed;
            for (std::size_t a = 0; a < t; ++a) {
                removed.emplace_back(tv(i, a), tv(jj, mate_of_a[a]));
                for (std::size_t b = 0; b < t; ++b)
                    if (b != mate_of_a[a]) edges.push_back({tv(i, a), tv(jj, b)});
            }
            rep.removed.push_back(std::move(removed));
        }
    }
    rep.template_graph = Graph(m * t, edges);
    Embedding e{rep.template_graph, j_graph, rep.origin, std::nullopt};
    if (opt.aux) e.constraint = ColourConstraint{opt.aux->as_edge_colouring(), {static_cast<Colour>(AuxLabel::Grey)}};
    auto check = validate_embedding(e);
    if (!check.ok) throw InternalError("check_template_containment: template failed validation: " + check.reason);
    rep.embedding = std::move(e);
    rep.ok = true;
    return rep;
}

// ===========================================================================
// Local Lemma embedding

struct LLLInstance {
    Graph templ;                                  // template graph
    std::vector<std::vector<Vertex>> cliques;     // template vertex -> B(u), host vertices
    Graph host;
    // Per canonical template edge {u, v}, u < v: bad pairs (x in B(u), y in B(v)).
    std::vector<std::vector<HostPair>> bad;
    std::size_t dependency_degree = 0;
    std::optional<EdgeColouring> colouring;       // present when built from a colouring
    Colour avoided = 1;

    // Position-indexed lookup: bad_mask[e][i * |B(v)| + j].
    std::vector<std::vector<char>> bad_mask;

    Rational max_bad_fraction() const {
        Rational best = 0;
        for (std::size_t idx = 0; idx < bad.size(); ++idx) {
            const Edge& e = templ.edges()[idx];
            Rational f(bad[idx].size(), cliques[e.u].size() * cliques[e.v].size());
            if (f > best) best = f;
        }
        return best;
    }
    Rational condition_value() const { return 4 * Rational(dependency_degree) * max_bad_fraction(); }
    bool condition_certified() const { return condition_value() <= 1; }
};

namespace detail {

inline void finish_lll_instance(LLLInstance& inst) {
    const Graph& tp = inst.templ;
    if (inst.cliques.size() != tp.vertex_count()) throw DomainError("LLL instance: need one clique per template vertex");
    std::vector<char> used(inst.host.vertex_count(), 0);
    for (const auto& b : inst.cliques) {
        if (b.empty()) throw PreconditionError("LLL instance: empty clique");
        for (Vertex x : b) {
            if (x >= inst.host.vertex_count()) throw DomainError("LLL instance: clique vertex outside the host");
            if (used[x]) throw PreconditionError("LLL instance: cliques must be disjoint");
            used[x] = 1;
        }
    }
    if (inst.bad.size() != tp.edge_count()) throw DomainError("LLL instance: need one bad set per template edge");
    inst.bad_mask.assign(tp.edge_count(), {});
    for (std::size_t idx = 0; idx < tp.edge_count(); ++idx) {
        const Edge& e = tp.edges()[idx];
        const auto& bu = inst.cliques[e.u];
        const auto& bv = inst.cliques[e.v];
        auto& mask = inst.bad_mask[idx];
        mask.assign(bu.size() * bv.size(), 0);
        for (const auto& [x, y] : inst.bad[idx]) {
            auto i = std::find(bu.begin(), bu.end(), x);
            auto j = std::find(bv.begin(), bv.end(), y);
            if (i == bu.end() || j == bv.end()) throw DomainError("LLL instance: bad pair outside B(u) x B(v)");
            mask[static_cast<std::size_t>(i - bu.begin()) * bv.size() + static_cast<std::size_t>(j - bv.begin())] = 1;
        }
        std::sort(inst.bad[idx].begin(), inst.bad[idx].end());
        inst.bad[idx].erase(std::unique(inst.bad[idx].begin(), inst.bad[idx].end()), inst.bad[idx].end());
    }
    // Events on edges sharing a template vertex depend on each other.
    inst.dependency_degree = 0;
    for (const Edge& e : tp.edges())
        inst.dependency_degree = std::max(inst.dependency_degree, tp.degree(e.u) + tp.degree(e.v) - 2);
}

}  // namespace detail

// Bad pairs are host non-edges and host edges of the avoided colour.
inline LLLInstance build_lll_instance(const Graph& templ, std::vector<std::vector<Vertex>> cliques, const EdgeColouring& chi,
                                      Colour avoided) {
    LLLInstance inst;
    inst.templ = templ;
    inst.cliques = std::move(cliques);
    inst.host = chi.host();
    inst.colouring = chi;
    inst.avoided = avoided;
    if (inst.cliques.size() != templ.vertex_count()) throw DomainError("build_lll_instance: need one clique per template vertex");
    for (const Edge& e : templ.edges()) {
        std::vector<HostPair> bad;
        for (Vertex x : inst.cliques[e.u])
            for (Vertex y : inst.cliques[e.v]) {
                auto idx = inst.host.edge_index(x, y);
                if (!idx || chi.at(*idx) == avoided) bad.emplace_back(x, y);
            }
        inst.bad.push_back(std::move(bad));
    }
    detail::finish_lll_instance(inst);
    return inst;
}

// Instance with explicitly listed bad pairs (no colouring attached).
inline LLLInstance make_lll_instance(const Graph& templ, std::vector<std::vector<Vertex>> cliques, const Graph& host,
                                     std::vector<std::vector<HostPair>> bad) {
    LLLInstance inst;
    inst.templ = templ;
    inst.cliques = std::move(cliques);
    inst.host = host;
    inst.bad = std::move(bad);
    detail::finish_lll_instance(inst);
    return inst;
}

struct LLLStats {
    std::uint64_t seed = 0;
    std::size_t resamples = 0;
    std::size_t max_resamples = 0;
    std::vector<std::size_t> violations;   // per template edge, times it was the resampled event
    Rational condition_value;
    bool condition_certified = false;
};

struct LLLResult {
    Embedding embedding;
    LLLStats stats;
};

class LLLFailure : public SearchExhausted {
public:
    LLLFailure(const std::string& what, LLLStats stats) : SearchExhausted(what), stats_(std::move(stats)) {}
    const LLLStats& stats() const { return stats_; }

private:
    LLLStats stats_;
};

/// Moser-Tardos: draw every x_u, then while some event is violated resample
/// both endpoints of the lowest-indexed one. Variable u's c-th draw is
/// counter_draw(seed, u, c), so a run is replayable from the seed alone.
inline LLLResult lll_embed(const LLLInstance& inst, std::uint64_t seed, std::size_t max_resamples) {
    if (max_resamples == 0) throw DomainError("lll_embed: max_resamples must be positive");
    const Graph& tp = inst.templ;
    const std::size_t nv = tp.vertex_count();
    LLLStats stats;
    stats.seed = seed;
    stats.max_resamples = max_resamples;
    stats.violations.assign(tp.edge_count(), 0);
    stats.condition_value = inst.condition_value();
    stats.condition_certified = stats.condition_value <= 1;

    std::vector<std::uint64_t> draws(nv, 0);
    std::vector<std::size_t> pos(nv, 0);
    auto draw = [&](Vertex u) { pos[u] = static_cast<std::size_t>(counter_draw(seed, u, draws[u]++, inst.cliques[u].size())); };
    for (Vertex u = 0; u < nv; ++u) draw(u);

    std::vector<std::vector<std::size_t>> incident(nv);
    for (std::size_t idx = 0; idx < tp.edge_count(); ++idx) {
        incident[tp.edges()[idx].u].push_back(idx);
        incident[tp.edges()[idx].v].push_back(idx);
    }
    auto violated = [&](std::size_t idx) {
        const Edge& e = tp.edges()[idx];
        return inst.bad_mask[idx][pos[e.u] * inst.cliques[e.v].size() + pos[e.v]] != 0;
    };
    std::set<std::size_t> active;
    for (std::size_t idx = 0; idx < tp.edge_count(); ++idx)
        if (violated(idx)) active.insert(idx);

    while (!active.empty()) {
        if (stats.resamples == max_resamples)
            throw LLLFailure("lll_embed: " + std::to_string(active.size()) + " events still violated after " +
                                 std::to_string(max_resamples) + " resamples",
                             stats);
        const std::size_t idx = *active.begin();
        ++stats.violations[idx];
        ++stats.resamples;
        const Edge e = tp.edges()[idx];
        draw(e.u);
        draw(e.v);
        for (Vertex u : {e.u, e.v})
            for (std::size_t f : incident[u]) {
                if (violated(f))
                    active.insert(f);
                else
                    active.erase(f);
            }
    }

    std::vector<Vertex> map(nv);
    for (Vertex u = 0; u < nv; ++u) map[u] = inst.cliques[u][pos[u]];
    Embedding e{tp, inst.host, std::move(map), std::nullopt};
    if (inst.colouring) {
        std::vector<Colour> allowed;
        for (Colour c = 1; c <= inst.colouring->colour_count(); ++c)
            if (c != inst.avoided) allowed.push_back(c);
        e.constraint = ColourConstraint{*inst.colouring, std::move(allowed)};
    }
    auto check = validate_embedding(e);
    if (!check.ok) throw InternalError("lll_embed: output failed validation: " + check.reason);
    return {std::move(e), std::move(stats)};
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_EMBEDDER_HPP
