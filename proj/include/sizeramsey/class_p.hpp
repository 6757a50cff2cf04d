#ifndef SIZERAMSEY_CLASS_P_HPP
#define SIZERAMSEY_CLASS_P_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/rational.hpp"
#include "sizeramsey/rng.hpp"
#include "sizeramsey/sparsify.hpp"
#include "sizeramsey/subsets.hpp"

// Members of the pseudorandom class P(a, b, c, t, eps, n): an vertices,
// maximum degree at most b, all (cn, cn)-pair densities within (1 ± eps) of a
// common f_G > 0, and no cycles of length at most 2t.

namespace sizeramsey {

struct GoodQuadruple {
    Rational a;
    Rational b;
    Rational c;
    Rational eps;
};

struct GoodnessReport {
    bool good = false;
    Rational b_lower_bound;              // 264 a^2 / (eps^2 c^2)
    std::vector<std::string> failures;   // one entry per violated inequality
};

inline Rational degree_bound_for(const GoodQuadruple& q) { return Rational(264) * q.a * q.a / (q.eps * q.eps * q.c * q.c); }

inline GoodnessReport is_good(const GoodQuadruple& q) {
    if (q.a <= 0 || q.b <= 0 || q.c <= 0 || q.eps <= 0) throw DomainError("is_good: a, b, c, eps must be positive");
    GoodnessReport report;
    report.b_lower_bound = degree_bound_for(q);
    if (q.a < 2 * q.c + 1) report.failures.push_back("a >= 2c+1 fails: a=" + to_string(q.a) + " < " + to_string(2 * q.c + 1));
    if (q.b < report.b_lower_bound)
        report.failures.push_back("b >= 264 a^2 eps^-2 c^-2 fails: b=" + to_string(q.b) + " < " + to_string(report.b_lower_bound));
    if (q.eps >= Rational(1, 10)) report.failures.push_back("eps < 1/10 fails: eps=" + to_string(q.eps));
    report.good = report.failures.empty();
    return report;
}

// Parameters are scaled by floor(x * n); cn must come out at least 2.
struct ClassPParams {
    GoodQuadruple quad;
    std::size_t t = 1;
    std::size_t n = 1;

    static std::size_t scaled(const Rational& x, std::size_t n) { return static_cast<std::size_t>(to_int64(floor(x * n))); }

    std::size_t an() const { return scaled(quad.a, n); }
    std::size_t cn() const { return scaled(quad.c, n); }
    std::size_t two_an() const { return scaled(2 * quad.a, n); }

    void validate() const {
        if (quad.a <= 0 || quad.b <= 0 || quad.c <= 0) throw DomainError("class-P parameters: a, b, c must be positive");
        if (quad.eps <= 0 || quad.eps >= 1) throw DomainError("class-P parameters: eps must lie in (0, 1)");
        if (t == 0) throw DomainError("class-P parameters: t must be positive");
        if (cn() < 2) throw DomainError("class-P parameters: floor(c*n) = " + std::to_string(cn()) + " < 2");
    }
};

// ---------------------------------------------------------------------------
// Pair-density statistics

struct PairWitness {
    std::vector<Vertex> x;
    std::vector<Vertex> y;
    std::size_t edges = 0;
};

struct VerifyMode {
    enum class Kind { Exhaustive, Sampled, Auto };

    Kind kind = Kind::Auto;
    std::size_t sample_count = 4000;
    std::uint64_t seed = 0;

    static VerifyMode exhaustive() { return {Kind::Exhaustive, 0, 0}; }
    static VerifyMode sampled(std::size_t count, std::uint64_t s) { return {Kind::Sampled, count, s}; }
    static VerifyMode automatic(std::size_t count, std::uint64_t s) { return {Kind::Auto, count, s}; }
};

// Largest number of disjoint pairs an exhaustive check will enumerate.
inline constexpr std::uint64_t kExhaustivePairBudget = 60'000'000;

inline bool exhaustive_feasible(std::size_t vertices, std::size_t k) {
    return vertices <= subsets::kMaxMaskVertices && subsets::disjoint_pair_count(vertices, k) <= kExhaustivePairBudget;
}

struct PairStats {
    bool exhaustive = false;
    std::size_t set_size = 0;
    std::size_t pairs = 0;
    std::uint64_t edge_sum = 0;
    std::size_t min_edges = 0;
    std::size_t max_edges = 0;
    PairWitness min_pair;
    PairWitness max_pair;
};

namespace detail {

inline void record_pair(PairStats& stats, std::size_t e, auto&& materialise) {
    if (stats.pairs == 0 || e < stats.min_edges) {
        stats.min_edges = e;
        stats.min_pair = materialise(e);
    }
    if (stats.pairs == 0 || e > stats.max_edges) {
        stats.max_edges = e;
        stats.max_pair = materialise(e);
    }
    ++stats.pairs;
    stats.edge_sum += e;
}

}  // namespace detail

/// e(X, Y) statistics over disjoint pairs of k-sets: every pair (exhaustive)
/// or `sample_count` uniformly drawn pairs (sampled). Auto picks exhaustive
/// when the pair count fits the budget.
inline PairStats pair_edge_stats(const Graph& g, std::size_t k, const VerifyMode& mode) {
    const std::size_t n = g.vertex_count();
    PairStats stats;
    stats.set_size = k;
    bool exhaustive = mode.kind == VerifyMode::Kind::Exhaustive ||
                      (mode.kind == VerifyMode::Kind::Auto && exhaustive_feasible(n, k));
    if (exhaustive && !exhaustive_feasible(n, k))
        throw DomainError("exhaustive pair enumeration infeasible for " + std::to_string(n) + " vertices and sets of size " +
                          std::to_string(k));
    stats.exhaustive = exhaustive;
    if (2 * k > n || k == 0) return stats;
    if (exhaustive) {
        auto adj = subsets::adjacency_masks(g);
        subsets::for_each_disjoint_pair(n, k, [&](subsets::Mask xs, subsets::Mask ys) {
            std::size_t e = subsets::cross_edges(adj, xs, ys);
            detail::record_pair(stats, e, [&](std::size_t edges) {
                return PairWitness{subsets::to_vertices(xs), subsets::to_vertices(ys), edges};
            });
            return true;
        });
        return stats;
    }
    Rng rng(mode.seed);
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::vector<char> in_y(n, 0);
    for (std::size_t s = 0; s < mode.sample_count; ++s) {
        for (std::size_t i = 0; i < 2 * k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(order[i], order[j]);
        }
        for (std::size_t i = k; i < 2 * k; ++i) in_y[order[i]] = 1;
        std::size_t e = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (Vertex w : g.neighbours(order[i])) e += in_y[w];
        for (std::size_t i = k; i < 2 * k; ++i) in_y[order[i]] = 0;
        detail::record_pair(stats, e, [&](std::size_t edges) {
            PairWitness w{{order.begin(), order.begin() + k}, {order.begin() + k, order.begin() + 2 * k}, edges};
            std::sort(w.x.begin(), w.x.end());
            std::sort(w.y.begin(), w.y.end());
            return w;
        });
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Density certificate

struct DensityCertificate {
    Rational f_g;                 // witness density
    bool exhaustive = false;
    std::size_t sample_count = 0; // sampled mode only
    std::uint64_t seed = 0;       // sampled mode only
    Rational max_rel_dev;         // max |d / f_g - 1| over checked pairs
    bool passed = false;
    Rational mean_density;
    Rational feasible_lo;         // every f in [lo, hi] works, when lo <= hi and hi > 0
    Rational feasible_hi;
    std::size_t pairs_checked = 0;
    PairWitness sparsest;
    PairWitness densest;
    PairWitness worst;            // the pair attaining max_rel_dev
};

inline DensityCertificate certify_density(const PairStats& stats, const Rational& eps) {
    DensityCertificate cert;
    cert.exhaustive = stats.exhaustive;
    cert.pairs_checked = stats.pairs;
    cert.sparsest = stats.min_pair;
    cert.densest = stats.max_pair;
    if (stats.pairs == 0) {
        // No pair of the required size exists; the condition holds vacuously.
        cert.f_g = 1;
        cert.feasible_lo = 0;
        cert.feasible_hi = 1;
        cert.passed = true;
        return cert;
    }
    const Rational area(stats.set_size * stats.set_size);
    const Rational d_min = Rational(stats.min_edges) / area;
    const Rational d_max = Rational(stats.max_edges) / area;
    cert.mean_density = Rational(stats.edge_sum) / (area * stats.pairs);
    cert.feasible_lo = d_max / (1 + eps);
    cert.feasible_hi = d_min / (1 - eps);
    const bool feasible = cert.feasible_hi > 0 && cert.feasible_lo <= cert.feasible_hi;
    if (!feasible || (cert.mean_density >= cert.feasible_lo && cert.mean_density <= cert.feasible_hi)) {
        cert.f_g = cert.mean_density;
    } else {
        cert.f_g = (cert.feasible_lo + cert.feasible_hi) / 2;
    }
    if (cert.f_g > 0) {
        Rational up = d_max / cert.f_g - 1;
        Rational down = 1 - d_min / cert.f_g;
        cert.max_rel_dev = up > down ? up : down;
        cert.worst = up > down ? stats.max_pair : stats.min_pair;
    } else {
        cert.max_rel_dev = 1;
        cert.worst = stats.min_pair;
    }
    cert.passed = cert.f_g > 0 && cert.max_rel_dev <= eps;
    return cert;
}

// ---------------------------------------------------------------------------
// Verification

struct ClassPReport {
    std::size_t vertices = 0;
    std::size_t expected_vertices = 0;
    bool vertex_count_ok = false;          // (i)
    std::size_t max_degree = 0;
    bool degree_ok = false;                // (ii)
    DensityCertificate density;            // (iii)
    std::optional<std::vector<Vertex>> short_cycle;  // (iv) witness when violated

    bool girth_ok() const { return !short_cycle.has_value(); }
    bool passed() const { return vertex_count_ok && degree_ok && density.passed && girth_ok(); }
};

inline ClassPReport verify_class_p(const Graph& g, const ClassPParams& params, const VerifyMode& mode) {
    params.validate();
    ClassPReport report;
    report.vertices = g.vertex_count();
    report.expected_vertices = params.an();
    report.vertex_count_ok = report.vertices == report.expected_vertices;
    report.max_degree = max_degree(g);
    report.degree_ok = Rational(report.max_degree) <= params.quad.b;
    PairStats stats = pair_edge_stats(g, params.cn(), mode);
    report.density = certify_density(stats, params.quad.eps);
    if (!stats.exhaustive) {
        report.density.sample_count = mode.sample_count;
        report.density.seed = mode.seed;
    }
    if (2 * params.t >= 3) report.short_cycle = girth_violation(g, 2 * params.t);
    return report;
}

// ---------------------------------------------------------------------------
// Generation

struct GenerationConfig {
    enum class Mode { Paper, Toy };

    Rational p{1, 2};               // toy mode edge probability; ignored in paper mode
    std::uint64_t seed = 0;
    Mode mode = Mode::Toy;
    std::size_t sample_count = 4000;   // pairs per sampled certification
    std::size_t max_resamples = 16;
    bool certify = true;               // false skips both density certifications
    // Relative tolerance for the sampled-graph check; eps/2 when unset.
    std::optional<Rational> sample_tolerance;
};

inline Rational paper_edge_probability(const ClassPParams& params) {
    const auto& q = params.quad;
    return Rational(60) * q.a / (q.eps * q.eps * q.c * q.c * params.n);
}

struct GenerationAttempt {
    std::uint64_t seed = 0;
    std::size_t sampled_edges = 0;
    bool sample_certified = false;
    Rational sample_worst_rel_dev;     // relative to the target p (cn)^2
    std::size_t cycles_found = 0;
    std::size_t edges_removed = 0;
    std::size_t max_degree_after_prune = 0;
    bool output_certified = false;
    std::string outcome;               // "accepted" or the reason for resampling
};

struct GenerationLog {
    Rational p;
    std::size_t resamples = 0;
    std::vector<GenerationAttempt> attempts;
    std::vector<Edge> removed_edges;      // accepted attempt, vertex ids of the sampled graph
    std::vector<Vertex> removed_vertices; // accepted attempt, in removal order
    std::size_t cycles_found = 0;
};

struct GenerationResult {
    Graph graph;
    DensityCertificate certificate;
    GenerationLog log;
    std::vector<Vertex> origin;   // output vertex -> vertex of the sampled graph
};

class CertificationFailure : public SearchExhausted {
public:
    CertificationFailure(const std::string& what, PairWitness worst, GenerationLog log)
        : SearchExhausted(what), worst_(std::move(worst)), log_(std::move(log)) {}

    const PairWitness& worst_pair() const { return worst_; }
    const GenerationLog& log() const { return log_; }

private:
    PairWitness worst_;
    GenerationLog log_;
};

inline Graph sample_binomial(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.push_back({u, v});
    return Graph(n, edges);
}

struct CycleCleaning {
    Graph graph;
    std::vector<Edge> removed;
    std::size_t cycles_found = 0;
};

/// Deletes one edge from every cycle of length at most `max_len` until none
/// remain. Edges are scanned in canonical order; while the scanned edge lies
/// on such a cycle, a shortest one through it is taken and its edge of largest
/// endpoint-degree sum (lexicographically smallest on ties) is deleted.
inline CycleCleaning clean_short_cycles(const Graph& g, std::size_t max_len) {
    CycleCleaning result;
    if (max_len < 3) {
        result.graph = g;
        return result;
    }
    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) adj[v].assign(g.neighbours(v).begin(), g.neighbours(v).end());
    auto alive = [&](Vertex a, Vertex b) { return std::binary_search(adj[a].begin(), adj[a].end(), b); };
    auto erase = [&](Vertex a, Vertex b) {
        adj[a].erase(std::lower_bound(adj[a].begin(), adj[a].end(), b));
        adj[b].erase(std::lower_bound(adj[b].begin(), adj[b].end(), a));
    };
    detail::BfsWorkspace bfs(g.vertex_count());
    for (const Edge& e : g.edges()) {
        while (alive(e.u, e.v)) {
            auto path = bfs.path_avoiding_edge([&](Vertex x) -> const std::vector<Vertex>& { return adj[x]; }, e.u, e.v,
                                               max_len - 1);
            if (path.empty()) break;
            ++result.cycles_found;
            Edge victim{};
            std::size_t best = 0;
            bool have = false;
            for (std::size_t i = 0; i < path.size(); ++i) {
                Edge c = make_edge(path[i], path[(i + 1) % path.size()]);
                std::size_t weight = adj[c.u].size() + adj[c.v].size();
                if (!have || weight > best || (weight == best && c < victim)) {
                    victim = c;
                    best = weight;
                    have = true;
                }
            }
            erase(victim.u, victim.v);
            result.removed.push_back(victim);
        }
    }
    std::vector<Edge> kept;
    for (const Edge& e : g.edges())
        if (alive(e.u, e.v)) kept.push_back(e);
    result.graph = Graph(g.vertex_count(), kept);
    return result;
}

/// Sample G(2an, p), certify its (cn, cn)-pair edge counts against
/// (1 ± eps/2) p (cn)^2, delete an edge from every cycle of length <= 2t,
/// then remove maximum-degree vertices until an remain. An attempt is
/// accepted when the output also has max degree <= b and passes its own
/// density certificate; otherwise the graph is resampled.
inline GenerationResult generate_class_p(const ClassPParams& params, const GenerationConfig& cfg) {
    params.validate();
    GenerationLog log;
    if (cfg.mode == GenerationConfig::Mode::Paper) {
        log.p = paper_edge_probability(params);
        if (log.p > 1)
            throw InfeasibleError("paper-mode edge probability 60a/(eps^2 c^2 n) = " + to_string(log.p) +
                                  " exceeds 1; use toy mode or a larger n");
    } else {
        log.p = cfg.p;
        if (log.p <= 0 || log.p > 1) throw DomainError("edge probability must lie in (0, 1], got " + to_string(log.p));
    }
    const std::size_t big_n = params.two_an();
    const std::size_t an = params.an();
    const std::size_t k = params.cn();
    if (an > big_n) throw InternalError("generate_class_p: an exceeds 2an");
    const double p = to_double(log.p);
    const Rational target = log.p * Rational(k * k);
    const Rational half_eps = cfg.sample_tolerance.value_or(params.quad.eps / 2);
    if (half_eps <= 0) throw DomainError("sample tolerance must be positive");

    PairWitness worst;
    Rational worst_dev = -1;
    for (std::size_t attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
        GenerationAttempt rec;
        rec.seed = derive_seed(cfg.seed, attempt);
        Graph sampled = sample_binomial(big_n, p, rec.seed);
        rec.sampled_edges = sampled.edge_count();

        if (cfg.certify) {
            PairStats stats = pair_edge_stats(sampled, k, VerifyMode::automatic(cfg.sample_count, derive_seed(rec.seed, 1)));
            Rational low = Rational(stats.min_edges);
            Rational high = Rational(stats.max_edges);
            Rational dev_low = target > 0 ? 1 - low / target : Rational(0);
            Rational dev_high = target > 0 ? high / target - 1 : Rational(0);
            rec.sample_worst_rel_dev = dev_low > dev_high ? dev_low : dev_high;
            rec.sample_certified = stats.pairs == 0 || rec.sample_worst_rel_dev <= half_eps;
            if (rec.sample_worst_rel_dev > worst_dev) {
                worst_dev = rec.sample_worst_rel_dev;
                worst = dev_low > dev_high ? stats.min_pair : stats.max_pair;
            }
            if (!rec.sample_certified) {
                rec.outcome = "sampled graph failed the (1 +- " + to_string(half_eps) + ") p (cn)^2 certification";
                log.attempts.push_back(rec);
                continue;
            }
        } else {
            rec.sample_certified = true;
        }

        CycleCleaning cleaned = clean_short_cycles(sampled, 2 * params.t);
        rec.cycles_found = cleaned.cycles_found;
        rec.edges_removed = cleaned.removed.size();
        PruneResult pruned = prune_top(cleaned.graph, big_n - an);
        const Graph& out = pruned.kept.graph;
        rec.max_degree_after_prune = max_degree(out);
        if (Rational(rec.max_degree_after_prune) > params.quad.b) {
            rec.outcome = "max degree " + std::to_string(rec.max_degree_after_prune) + " exceeds b after pruning";
            log.attempts.push_back(rec);
            continue;
        }
        DensityCertificate cert;
        if (cfg.certify) {
            VerifyMode mode = VerifyMode::automatic(cfg.sample_count, derive_seed(rec.seed, 2));
            PairStats stats = pair_edge_stats(out, k, mode);
            cert = certify_density(stats, params.quad.eps);
            if (!stats.exhaustive) {
                cert.sample_count = mode.sample_count;
                cert.seed = mode.seed;
            }
            rec.output_certified = cert.passed;
            if (!cert.passed) {
                if (cert.max_rel_dev > worst_dev) {
                    worst_dev = cert.max_rel_dev;
                    worst = cert.worst;
                }
                rec.outcome = "output failed the (1 +- eps) f_G density certificate";
                log.attempts.push_back(rec);
                continue;
            }
        }
        rec.outcome = "accepted";
        log.attempts.push_back(rec);
        log.resamples = attempt;
        log.removed_edges = std::move(cleaned.removed);
        log.removed_vertices = std::move(pruned.removed);
        log.cycles_found = cleaned.cycles_found;
        return {out, std::move(cert), std::move(log), std::move(pruned.kept.origin)};
    }
    log.resamples = cfg.max_resamples;
    std::string reason = log.attempts.empty() ? std::string("no attempts") : log.attempts.back().outcome;
    throw CertificationFailure("generation failed after " + std::to_string(cfg.max_resamples) +
                                   " resamples; last attempt: " + reason,
                               worst, log);
}

// ---------------------------------------------------------------------------
// Density propositions (exhaustive, small graphs)

struct PropagationReport {
    bool hypothesis_holds = false;
    std::optional<PairWitness> hypothesis_violation;
    bool conclusion_holds = false;
    std::optional<std::string> conclusion_violation;
    std::uint64_t pairs_checked = 0;
    std::uint64_t sets_checked = 0;
};

inline constexpr std::size_t kMaxPropagationVertices = 16;

namespace detail {

// Integer edge-count window [lo, hi] equivalent to (1 - eps) f <= e / area <= (1 + eps) f.
inline std::pair<std::int64_t, std::int64_t> edge_window(const Rational& f, const Rational& eps, std::size_t area) {
    std::int64_t lo = to_int64(ceil((1 - eps) * f * area));
    std::int64_t hi = to_int64(floor((1 + eps) * f * area));
    return {lo, hi};
}

}  // namespace detail

/// If every disjoint pair of exactly alpha_n-sets has density (1 ± eps) f,
/// then so does every disjoint pair of sets of size >= alpha_n, and every set
/// of size >= 2 alpha_n. Checked exhaustively.
inline PropagationReport verify_density_propagation(const Graph& g, std::size_t alpha_n, const Rational& eps,
                                                    const Rational& f) {
    const std::size_t n = g.vertex_count();
    if (n > kMaxPropagationVertices) throw DomainError("verify_density_propagation: exhaustive check limited to 16 vertices");
    if (alpha_n == 0) throw DomainError("verify_density_propagation: alpha n must be positive");
    if (eps <= 0 || f <= 0) throw DomainError("verify_density_propagation: eps and f must be positive");
    using subsets::Mask;
    PropagationReport report;
    auto adj = subsets::adjacency_masks(g);

    auto window = detail::edge_window(f, eps, alpha_n * alpha_n);
    report.hypothesis_holds = subsets::for_each_disjoint_pair(n, alpha_n, [&](Mask xs, Mask ys) {
        auto e = static_cast<std::int64_t>(subsets::cross_edges(adj, xs, ys));
        if (e < window.first || e > window.second) {
            report.hypothesis_violation = PairWitness{subsets::to_vertices(xs), subsets::to_vertices(ys), std::size_t(e)};
            return false;
        }
        return true;
    });
    if (!report.hypothesis_holds) return report;

    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> pair_window(n + 1);
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; b <= n; ++b) pair_window[a].push_back(detail::edge_window(f, eps, a * b));

    const Mask all = (Mask{1} << n) - 1;
    std::vector<std::uint16_t> cross(std::size_t{1} << n, 0);
    std::vector<std::uint16_t> into_u(n, 0);
    report.conclusion_holds = true;
    for (Mask u = 1; u <= all && report.conclusion_holds; ++u) {
        const auto su = static_cast<std::size_t>(std::popcount(u));
        if (su < alpha_n) continue;
        for (std::size_t w = 0; w < n; ++w) into_u[w] = static_cast<std::uint16_t>(std::popcount(adj[w] & u));
        const Mask rest = all & ~u;
        const Mask u_low = u & (~u + 1);
        // Submasks of `rest` in increasing order, so cross[w & (w-1)] is ready.
        for (Mask w = (0 - rest) & rest; w != 0; w = (w - rest) & rest) {
            Mask low = w & (~w + 1);
            cross[w] = static_cast<std::uint16_t>(cross[w & (w - 1)] + into_u[std::countr_zero(w)]);
            const auto sw = static_cast<std::size_t>(std::popcount(w));
            if (sw < alpha_n || low < u_low) continue;
            ++report.pairs_checked;
            auto [lo, hi] = pair_window[su][sw];
            if (cross[w] < lo || cross[w] > hi) {
                report.conclusion_holds = false;
                report.conclusion_violation = "pair density out of range: |U|=" + std::to_string(su) +
                                              ", |W|=" + std::to_string(sw) + ", e=" + std::to_string(cross[w]);
                break;
            }
        }
    }
    if (!report.conclusion_holds) return report;

    std::vector<std::uint16_t> inside(std::size_t{1} << n, 0);
    for (Mask s = 1; s <= all; ++s) {
        Mask low = s & (~s + 1);
        Mask rest = s & (s - 1);
        inside[s] = static_cast<std::uint16_t>(inside[rest] + std::popcount(adj[std::countr_zero(low)] & rest));
        const auto size = static_cast<std::size_t>(std::popcount(s));
        if (size < 2 * alpha_n || size < 2) continue;
        ++report.sets_checked;
        auto [lo, hi] = detail::edge_window(f, eps, size * (size - 1) / 2);
        if (inside[s] < lo || inside[s] > hi) {
            report.conclusion_holds = false;
            report.conclusion_violation = "set density out of range: |S|=" + std::to_string(size) + ", e=" + std::to_string(inside[s]);
            break;
        }
    }
    return report;
}

struct EdgeBoostReport {
    bool hypothesis_holds = false;
    std::optional<PairWitness> hypothesis_violation;   // two mu-sets with no edge
    Rational bound;                                    // beta_n^2 / (2 mu_n)
    bool conclusion_holds = false;
    std::optional<PairWitness> conclusion_violation;
    std::size_t min_edges = 0;                         // over beta-pairs
    std::uint64_t pairs_checked = 0;
};

/// On an alpha_n-vertex graph where every two disjoint mu_n-sets span an
/// edge, every two disjoint beta_n-sets span at least beta_n^2 / (2 mu_n) edges.
inline EdgeBoostReport verify_edgeboost(const Graph& g, std::size_t alpha_n, std::size_t beta_n, std::size_t mu_n) {
    if (g.vertex_count() != alpha_n) throw DomainError("verify_edgeboost: graph must have alpha n vertices");
    if (mu_n == 0 || 2 * mu_n > beta_n || beta_n > alpha_n)
        throw DomainError("verify_edgeboost: need 0 < 2 mu n <= beta n <= alpha n");
    using subsets::Mask;
    EdgeBoostReport report;
    report.bound = Rational(beta_n * beta_n, 2 * mu_n);
    if (auto empty = subsets::find_empty_pair(g, mu_n)) {
        report.hypothesis_violation = PairWitness{subsets::to_vertices(empty->first), subsets::to_vertices(empty->second), 0};
        return report;
    }
    report.hypothesis_holds = true;
    auto adj = subsets::adjacency_masks(g);
    report.conclusion_holds = true;
    bool first = true;
    subsets::for_each_disjoint_pair(alpha_n, beta_n, [&](Mask xs, Mask ys) {
        std::size_t e = subsets::cross_edges(adj, xs, ys);
        ++report.pairs_checked;
        if (first || e < report.min_edges) report.min_edges = e;
        first = false;
        if (Rational(e) < report.bound) {
            report.conclusion_holds = false;
            report.conclusion_violation = PairWitness{subsets::to_vertices(xs), subsets::to_vertices(ys), e};
            return false;
        }
        return true;
    });
    return report;
}

/// Upper bound 2 exp(-(eps^2 / 3) E[X]) on P(|X - E[X]| > eps E[X]) for a sum
/// of independent Bernoulli variables.
inline double chernoff_bound(const Rational& eps, const Rational& expectation) {
    if (eps <= 0 || eps > Rational(3, 2)) throw DomainError("chernoff_bound: eps must lie in (0, 3/2]");
    if (expectation <= 0) throw DomainError("chernoff_bound: E[X] must be positive");
    const double e = to_double(eps);
    return 2.0 * std::exp(-(e * e / 3.0) * to_double(expectation));
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_CLASS_P_HPP
