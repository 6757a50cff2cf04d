#ifndef SIZERAMSEY_PIPELINE_HPP
#define SIZERAMSEY_PIPELINE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sizeramsey/blowup.hpp"
#include "sizeramsey/class_p.hpp"
#include "sizeramsey/colouring.hpp"
#include "sizeramsey/edge_colouring.hpp"
#include "sizeramsey/embedder.hpp"
#include "sizeramsey/json_io.hpp"
#include "sizeramsey/paths.hpp"
#include "sizeramsey/rng.hpp"
#include "sizeramsey/sparsify.hpp"

namespace sizeramsey {

inline constexpr int kSchemaVersion = 1;

// ===========================================================================
// Configuration

struct PipelineBudgets {
    std::uint64_t arrow = std::uint64_t{1} << 24;
    std::size_t lll_resamples = 0;              // 0: 100 per template edge
    PartitionMode partition_mode = PartitionMode::Auto;
    std::size_t partition_restarts = 32;
    std::uint64_t path_nodes = 2'000'000;
    std::size_t verify_samples = 2000;          // pairs per sampled class check
};

struct PipelineSeeds {
    std::uint64_t generation = 0;
    std::uint64_t colouring = 0;
    std::uint64_t partition = 0;
    std::uint64_t path = 0;
    std::uint64_t sparsify = 0;
    std::uint64_t lll = 0;
    std::uint64_t verify = 0;

    static PipelineSeeds from_master(std::uint64_t seed) {
        return {derive_seed(seed, 1), derive_seed(seed, 2), derive_seed(seed, 3), derive_seed(seed, 4),
                derive_seed(seed, 5), derive_seed(seed, 6), derive_seed(seed, 7)};
    }
};

struct PipelineConfig {
    std::size_t k = 1;         // power of the path
    std::size_t s = 2;         // colours
    std::size_t r = 1;         // lower-level power
    std::size_t t = 2;         // lower-level blow-up
    std::size_t n = 4;         // pattern P_n^k
    std::optional<std::size_t> R;   // host power, t r when unset
    std::size_t T = 6;         // host clique size
    std::size_t T_prime = 3;   // monochromatic subclique size

    ClassPParams host_params{{Rational(2), Rational(100), Rational(1, 2), Rational(1, 2)}, 1, 8};
    GenerationConfig host_generation;
    GoodQuadruple lower_quad{Rational(2), Rational(100), Rational(1, 2), Rational(1, 2)};
    std::size_t lower_n = 2;
    std::optional<Rational> sparsify_p;

    std::string colouring = "random";   // random | constant | no-blue-biclique
    Colour colouring_colour = 1;

    std::uint64_t seed = 0;
    PipelineSeeds seeds = PipelineSeeds::from_master(0);
    PipelineBudgets budgets;
    bool continue_on_hypothesis_failure = false;
    bool long_path_precheck = true;

    std::size_t host_power() const { return R.value_or(t * r); }

    void validate() const {
        if (k == 0 || s == 0 || r == 0 || t == 0 || n == 0) throw DomainError("pipeline: k, s, r, t, n must be positive");
        if (T == 0 || T_prime == 0 || T_prime > T) throw DomainError("pipeline: need 1 <= T' <= T");
        if (host_power() == 0) throw DomainError("pipeline: R must be positive");
        if (budgets.partition_restarts == 0 || budgets.path_nodes == 0 || budgets.arrow == 0 || budgets.verify_samples == 0)
            throw DomainError("pipeline: budgets must be positive");
        if (s > kMaxSerialColours) throw DomainError("pipeline: at most 36 colours");
        host_params.validate();
    }
};

inline PartitionMode read_partition_mode(const ConfigReader& r, const std::string& key, PartitionMode fallback) {
    std::string def = fallback == PartitionMode::Exhaustive ? "exhaustive" : fallback == PartitionMode::Heuristic ? "heuristic" : "auto";
    std::string v = r.choice(key, def, {"auto", "exhaustive", "heuristic"});
    return v == "exhaustive" ? PartitionMode::Exhaustive : v == "heuristic" ? PartitionMode::Heuristic : PartitionMode::Auto;
}

inline const char* to_string(PartitionMode m) {
    return m == PartitionMode::Exhaustive ? "exhaustive" : m == PartitionMode::Heuristic ? "heuristic" : "auto";
}

/// Reads a pipeline configuration; `seed_override` replaces the top-level seed.
inline PipelineConfig read_pipeline_config(const Json& j, std::optional<std::uint64_t> seed_override = std::nullopt) {
    ConfigReader root(j);
    if (root.has("schemaVersion") && root.integer("schemaVersion") != kSchemaVersion)
        throw ConfigError(root.where("schemaVersion"), "unsupported schema version");
    PipelineConfig cfg;
    cfg.k = root.positive("k", cfg.k);
    cfg.s = root.positive("s", cfg.s);
    cfg.r = root.positive("r", cfg.r);
    cfg.t = root.positive("t", cfg.t);
    cfg.n = root.positive("n", cfg.n);
    if (root.has("R")) cfg.R = root.positive("R");
    cfg.T = root.positive("T", cfg.T);
    cfg.T_prime = root.positive("Tprime", cfg.T_prime);
    if (cfg.T_prime > cfg.T) throw ConfigError(root.where("Tprime"), "must not exceed T");
    if (auto host = root.optional_child("host")) {
        cfg.host_params = read_class_params(*host);
        cfg.host_generation = read_generation_config(*host);
    }
    if (auto lower = root.optional_child("lower")) {
        cfg.lower_quad = read_quadruple(*lower);
        cfg.lower_n = lower->positive("n", cfg.lower_n);
    }
    if (root.has("sparsify_p")) {
        cfg.sparsify_p = root.rational("sparsify_p");
        if (*cfg.sparsify_p <= 0 || *cfg.sparsify_p > 1) throw ConfigError(root.where("sparsify_p"), "must lie in (0, 1]");
    }
    if (auto col = root.optional_child("colouring")) {
        cfg.colouring = col->choice("kind", cfg.colouring, {"random", "constant", "no-blue-biclique"});
        cfg.colouring_colour = static_cast<Colour>(col->positive("colour", cfg.colouring_colour));
        if (cfg.colouring_colour > cfg.s) throw ConfigError(col->where("colour"), "exceeds s");
    }
    cfg.seed = seed_override.value_or(root.integer("seed", 0));
    cfg.seeds = PipelineSeeds::from_master(cfg.seed);
    if (!seed_override) {
        if (auto seeds = root.optional_child("seeds")) {
            cfg.seeds.generation = seeds->integer("generation", cfg.seeds.generation);
            cfg.seeds.colouring = seeds->integer("colouring", cfg.seeds.colouring);
            cfg.seeds.partition = seeds->integer("partition", cfg.seeds.partition);
            cfg.seeds.path = seeds->integer("path", cfg.seeds.path);
            cfg.seeds.sparsify = seeds->integer("sparsify", cfg.seeds.sparsify);
            cfg.seeds.lll = seeds->integer("lll", cfg.seeds.lll);
            cfg.seeds.verify = seeds->integer("verify", cfg.seeds.verify);
        }
    }
    cfg.host_generation.seed = cfg.seeds.generation;
    if (auto b = root.optional_child("budgets")) {
        cfg.budgets.arrow = b->positive("arrow", cfg.budgets.arrow);
        cfg.budgets.lll_resamples = b->integer("lll_resamples", cfg.budgets.lll_resamples);
        cfg.budgets.partition_mode = read_partition_mode(*b, "partition_mode", cfg.budgets.partition_mode);
        cfg.budgets.partition_restarts = b->positive("partition_restarts", cfg.budgets.partition_restarts);
        cfg.budgets.path_nodes = b->positive("path_nodes", cfg.budgets.path_nodes);
        cfg.budgets.verify_samples = b->positive("verify_samples", cfg.budgets.verify_samples);
    }
    cfg.continue_on_hypothesis_failure = root.boolean("continue_on_hypothesis_failure", cfg.continue_on_hypothesis_failure);
    cfg.long_path_precheck = root.boolean("long_path_precheck", cfg.long_path_precheck);
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError("/", e.what());
    }
    return cfg;
}

inline Json to_json(const PipelineConfig& c) {
    Json out{{"schemaVersion", kSchemaVersion},
             {"k", c.k},
             {"s", c.s},
             {"r", c.r},
             {"t", c.t},
             {"n", c.n},
             {"R", c.host_power()},
             {"T", c.T},
             {"Tprime", c.T_prime}};
    Json host = to_json(c.host_params.quad);
    host["t"] = c.host_params.t;
    host["n"] = c.host_params.n;
    host["mode"] = c.host_generation.mode == GenerationConfig::Mode::Paper ? "paper" : "toy";
    host["p"] = to_json(c.host_generation.p);
    host["certify"] = c.host_generation.certify;
    host["sample_count"] = c.host_generation.sample_count;
    host["max_resamples"] = c.host_generation.max_resamples;
    if (c.host_generation.sample_tolerance) host["sample_tolerance"] = to_json(*c.host_generation.sample_tolerance);
    out["host"] = std::move(host);
    Json lower = to_json(c.lower_quad);
    lower["n"] = c.lower_n;
    out["lower"] = std::move(lower);
    if (c.sparsify_p) out["sparsify_p"] = to_json(*c.sparsify_p);
    out["colouring"] = {{"kind", c.colouring}, {"colour", c.colouring_colour}};
    out["seed"] = c.seed;
    out["seeds"] = {{"generation", c.seeds.generation}, {"colouring", c.seeds.colouring}, {"partition", c.seeds.partition},
                    {"path", c.seeds.path},             {"sparsify", c.seeds.sparsify},   {"lll", c.seeds.lll},
                    {"verify", c.seeds.verify}};
    out["budgets"] = {{"arrow", c.budgets.arrow},
                      {"lll_resamples", c.budgets.lll_resamples},
                      {"partition_mode", to_string(c.budgets.partition_mode)},
                      {"partition_restarts", c.budgets.partition_restarts},
                      {"path_nodes", c.budgets.path_nodes},
                      {"verify_samples", c.budgets.verify_samples}};
    out["continue_on_hypothesis_failure"] = c.continue_on_hypothesis_failure;
    out["long_path_precheck"] = c.long_path_precheck;
    return out;
}

// ===========================================================================
// Hosts and colourings for experiments

struct StepHost {
    Graph g;
    GenerationResult generation;
    Blowup host;
};

// G from the host parameters, then G^R{T}.
inline StepHost build_step_host(const PipelineConfig& cfg) {
    GenerationResult gen = generate_class_p(cfg.host_params, cfg.host_generation);
    Blowup host = sheared_blowup(power(gen.graph, cfg.host_power()), cfg.T);
    Graph g = gen.graph;
    return {std::move(g), std::move(gen), std::move(host)};
}

/// random: uniform colours; constant: every edge `colour`; no-blue-biclique:
/// clique edges colour 1, edges between cliques uniform over 2..s.
inline EdgeColouring make_colouring(const Blowup& host, std::size_t s, const std::string& kind, std::uint64_t seed,
                                    Colour colour = 1) {
    if (kind == "constant") return EdgeColouring::constant(host.host, s, colour);
    Rng rng(seed);
    std::vector<Colour> cs;
    cs.reserve(host.host.edge_count());
    if (kind == "random") {
        for (std::size_t i = 0; i < host.host.edge_count(); ++i) cs.push_back(static_cast<Colour>(1 + rng.below(s)));
    } else if (kind == "no-blue-biclique") {
        for (const Edge& e : host.host.edges()) {
            bool inside = host.map.base_vertex_of(e.u) == host.map.base_vertex_of(e.v);
            cs.push_back(inside || s == 1 ? Colour{1} : static_cast<Colour>(2 + rng.below(s - 1)));
        }
    } else {
        throw DomainError("make_colouring: unknown kind '" + kind + "'");
    }
    return EdgeColouring(host.host, s, std::move(cs));
}

// ===========================================================================
// The induction step

enum class OutcomeKind { MonoPowerFound, ReducedColours, HonestFailure };

inline const char* to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::MonoPowerFound: return "monoPowerFound";
        case OutcomeKind::ReducedColours: return "reducedColours";
        case OutcomeKind::HonestFailure: return "honestFailure";
    }
    return "?";
}

struct StepOutcome {
    OutcomeKind kind = OutcomeKind::HonestFailure;
    // monoPowerFound
    std::optional<Embedding> mono_power;
    Colour mono_colour = 0;
    // reducedColours
    std::optional<Graph> H;
    std::vector<Colour> remaining_colours;
    std::optional<Embedding> template_embedding;
    // honestFailure
    std::string failed_stage;
    std::string reason;
    Json diagnostics = Json::object();

    Json trace = Json::array();
};

namespace detail {

class Trace {
public:
    explicit Trace(Json& sink) : sink_(sink) {}
    void add(const std::string& stage, const std::string& status, Json details = Json::object()) {
        sink_.push_back(Json{{"index", sink_.size()}, {"stage", stage}, {"status", status}, {"details", std::move(details)}});
    }

private:
    Json& sink_;
};

inline std::optional<std::string> graph_mismatch(const Graph& expected, const Graph& actual) {
    if (expected.vertex_count() != actual.vertex_count()) return "vertex counts differ";
    if (!(expected == actual)) return "edge sets differ";
    return std::nullopt;
}

// Restriction of a P_{m}^k embedding to its first n vertices.
inline Embedding prefix_power(const Embedding& e, std::size_t n, std::size_t k) {
    Embedding out{path_power(n, k), e.host, std::vector<Vertex>(e.map.begin(), e.map.begin() + static_cast<std::ptrdiff_t>(n)),
                  e.constraint};
    return out;
}

}  // namespace detail

/// One application of the induction step to an s-colouring of G^R{T}.
/// Every stage appends to the trace; the first terminal condition returns.
inline StepOutcome induction_step(const Graph& g, const Blowup& host, const EdgeColouring& chi, const PipelineConfig& cfg) {
    cfg.validate();
    StepOutcome out;
    detail::Trace trace(out.trace);
    const std::size_t k = cfg.k, s = cfg.s, t = cfg.t, n = cfg.n, R = cfg.host_power();

    auto fail = [&](const std::string& stage, const std::string& reason, Json diag = Json::object()) {
        trace.add(stage, "failed", Json{{"reason", reason}, {"diagnostics", diag}});
        out.kind = OutcomeKind::HonestFailure;
        out.failed_stage = stage;
        out.reason = reason;
        out.diagnostics = std::move(diag);
        return out;
    };
    // A hypothesis of the construction that a toy instance may not meet.
    // Returns true when the run should stop.
    auto hypothesis = [&](const std::string& stage, const std::string& name, bool holds, Json details) {
        details["hypothesis"] = name;
        details["holds"] = holds;
        if (holds) {
            trace.add(stage, "ok", std::move(details));
            return false;
        }
        if (cfg.continue_on_hypothesis_failure) {
            trace.add(stage, "hypothesis-failed-continuing", std::move(details));
            return false;
        }
        fail(stage, "hypothesis failed: " + name, std::move(details));
        return true;
    };

    // ---- input -----------------------------------------------------------
    {
        Json d{{"baseVertices", g.vertex_count()}, {"baseEdges", g.edge_count()}, {"R", R}, {"T", cfg.T},
               {"Tprime", cfg.T_prime}, {"s", s}, {"k", k}, {"n", n}, {"hostVertices", host.host.vertex_count()},
               {"hostEdges", host.host.edge_count()}};
        if (auto bad = check_blowup(host.host, host.map)) return fail("input", "host is not a valid blow-up: " + *bad, d);
        if (!host.map.sheared) return fail("input", "host is not a sheared blow-up", d);
        if (host.map.t != cfg.T) return fail("input", "host clique size differs from T", d);
        if (auto bad = detail::graph_mismatch(power(g, R), host.map.base)) return fail("input", "host base is not G^R: " + *bad, d);
        if (!(chi.host() == host.host)) return fail("input", "colouring is not on the host", d);
        if (chi.colour_count() != s) return fail("input", "colouring uses a different number of colours", d);
        trace.add("input", "ok", std::move(d));
    }

    // ---- single colour: base case --------------------------------------------
    if (s == 1) {
        Json d{{"R", R}, {"k", k}, {"T", cfg.T}};
        if (R < k || cfg.T < k + 1) return fail("base-case", "base case needs R >= k and T >= k+1", d);
        LongPathOptions opt;
        opt.precheck = false;
        opt.seed = cfg.seeds.path;
        opt.node_budget = cfg.budgets.path_nodes;
        std::vector<Vertex> all(g.vertex_count());
        for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
        LongPathResult lp;
        try {
            lp = long_path_through_sets(g, {all}, n, opt);
        } catch (const NoPathFound& e) {
            d["bestLength"] = e.best().vertices.size();
            return fail("base-case", "no path on n vertices in G", d);
        }
        Embedding e = embed_base_case(host, k, lp.path);
        e.constraint = ColourConstraint{chi, {1}};
        auto check = validate_embedding(e);
        if (!check.ok) throw InternalError("induction_step: base-case embedding invalid: " + check.reason);
        d["path"] = lp.path.vertices;
        trace.add("base-case", "ok", std::move(d));
        out.kind = OutcomeKind::MonoPowerFound;
        out.mono_colour = 1;
        out.mono_power = std::move(e);
        return out;
    }

    // ---- monochromatic subcliques ------------------------------------------
    std::vector<MonoClique> mono(g.vertex_count());
    std::vector<std::size_t> per_colour(s + 1, 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto found = mono_clique_in_clique(chi, host.map.clique_of[v], cfg.T_prime);
        if (!found)
            return fail("mono-cliques", "clique C(" + std::to_string(v) + ") has no monochromatic subclique on T' vertices",
                        Json{{"vertex", v}, {"T", cfg.T}, {"Tprime", cfg.T_prime}});
        ++per_colour[found->colour];
        mono[v] = std::move(*found);
    }
    Colour blue = 1;
    for (Colour c = 2; c <= s; ++c)
        if (per_colour[c] > per_colour[blue]) blue = c;
    std::vector<Vertex> W;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (mono[v].colour == blue) W.push_back(v);
    {
        Json counts = Json::object();
        for (Colour c = 1; c <= s; ++c) counts[std::to_string(c)] = per_colour[c];
        trace.add("mono-cliques", "ok", Json{{"perColour", counts}, {"blue", blue}, {"rule", "most frequent colour, lowest on ties"}});
        if (hypothesis("colour-choice", "|W| >= |V(G)|/s", W.size() * s >= g.vertex_count(),
                       Json{{"W", W.size()}, {"baseVertices", g.vertex_count()}, {"s", s}}))
            return out;
    }

    // ---- auxiliary colouring on J = G[W]^R ------------------------------------
    InducedSubgraph gw = induced_subgraph(g, W);
    const Graph& GW = gw.graph;
    Graph J = power(GW, R);
    BlowupMap map = host.map;
    std::vector<std::vector<Vertex>> sub(g.vertex_count());
    for (Vertex v : W) sub[v] = mono[v].vertices;
    map.subclique = sub;
    AuxColouring aux = build_aux_colouring(J, W, map, chi, k, blue);
    if (auto bad = check_aux_witnesses(aux, map, chi)) throw InternalError("induction_step: aux witnesses invalid: " + *bad);
    std::size_t blue_j = 0;
    for (AuxLabel l : aux.label) blue_j += l == AuxLabel::Blue;
    trace.add("aux-colouring", "ok",
              Json{{"Jvertices", J.vertex_count()}, {"Jedges", J.edge_count()}, {"blueEdges", blue_j}, {"greyEdges", J.edge_count() - blue_j}});

    // ---- blue paths or the red t-partite remainder -------------------
    if (t < 2) return fail("partition", "the induction step needs t >= 2");
    Graph blue_j_graph = aux.as_edge_colouring().colour_class(static_cast<Colour>(AuxLabel::Blue));
    PartitionResult part = partition_two_coloured(blue_j_graph, t - 1, cfg.budgets.partition_mode, cfg.seeds.partition,
                                                  cfg.budgets.partition_restarts);
    std::size_t longest = 0, longest_idx = 0;
    for (std::size_t i = 0; i < part.blue_paths.size(); ++i)
        if (part.blue_paths[i].vertices.size() > longest) {
            longest = part.blue_paths[i].vertices.size();
            longest_idx = i;
        }
    {
        Json sizes = Json::array();
        for (const auto& p : part.blue_paths) sizes.push_back(p.vertices.size());
        trace.add("partition", "ok",
                  Json{{"ell", t - 1}, {"bluePathLengths", sizes}, {"redClassSize", part.red_classes.front().size()},
                       {"mode", to_string(cfg.budgets.partition_mode)}});
    }
    if (longest >= n) {
        PathWitness blue_path;
        const auto& src = part.blue_paths[longest_idx].vertices;
        blue_path.vertices.assign(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(n));
        Embedding big = blue_path_to_blue_power(blue_path, aux, map, chi);
        Embedding e = detail::prefix_power(big, n, k);
        auto check = validate_embedding(e);
        if (!check.ok) throw InternalError("induction_step: blue power invalid: " + check.reason);
        trace.add("blue-power", "ok", Json{{"bluePath", blue_path.vertices}, {"blockVertices", big.map.size()}, {"colour", blue}});
        out.kind = OutcomeKind::MonoPowerFound;
        out.mono_colour = blue;
        out.mono_power = std::move(e);
        return out;
    }

    // ---- long path through the red classes ------------------------------------
    std::vector<Vertex> jprime;
    for (const auto& cls : part.red_classes) jprime.insert(jprime.end(), cls.begin(), cls.end());
    std::sort(jprime.begin(), jprime.end());
    InducedSubgraph jpp = induced_subgraph(GW, jprime);   // J'' = G[V(J')], in J indices via origin
    std::vector<Vertex> local(GW.vertex_count(), 0);
    for (Vertex i = 0; i < jpp.origin.size(); ++i) local[jpp.origin[i]] = i;
    std::vector<std::vector<Vertex>> parts;
    for (const auto& cls : part.red_classes) {
        std::vector<Vertex> p;
        for (Vertex v : cls) p.push_back(local[v]);
        std::sort(p.begin(), p.end());
        parts.push_back(std::move(p));
    }
    const std::size_t two_an = ClassPParams::scaled(2 * cfg.lower_quad.a, cfg.lower_n);
    const std::size_t an = ClassPParams::scaled(cfg.lower_quad.a, cfg.lower_n);
    const std::size_t target = t * two_an;
    if (hypothesis("long-path-size", "|V(J')| >= 2atn", jprime.size() >= target,
                   Json{{"JprimeVertices", jprime.size()}, {"needed", target}, {"lowerBoundFromPaths", J.vertex_count() - std::min(J.vertex_count(), (t - 1) * (n - 1))}}))
        return out;
    LongPathOptions lopt;
    lopt.gamma = Rational(1, 2 * t);
    lopt.precheck = cfg.long_path_precheck;
    lopt.seed = cfg.seeds.path;
    lopt.node_budget = cfg.budgets.path_nodes;
    LongPathResult lp;
    try {
        lp = long_path_through_sets(jpp.graph, parts, target, lopt);
    } catch (const HypothesisFailure& h) {
        Json d{{"x", h.x()}, {"y", h.y()}, {"what", h.what()}};
        if (hypothesis("long-path", "every gamma-pair of J'' spans an edge", false, d)) return out;
        lopt.precheck = false;
        try {
            lp = long_path_through_sets(jpp.graph, parts, target, lopt);
        } catch (const NoPathFound& e) {
            return fail("long-path", e.what(), Json{{"bestLength", e.best().vertices.size()}, {"needed", target}});
        }
    } catch (const NoPathFound& e) {
        return fail("long-path", e.what(), Json{{"bestLength", e.best().vertices.size()}, {"needed", target}});
    }
    PathWitness path;
    for (Vertex v : lp.path.vertices) path.vertices.push_back(jpp.origin[v]);
    if (auto bad = check_path(GW, path)) throw InternalError("induction_step: long path invalid: " + *bad);
    trace.add("long-path", "ok", Json{{"length", path.vertices.size()}, {"nodes", lp.nodes}, {"hypothesisChecked", lp.hypothesis_checked}});

    // ---- segments and H' ------------------------------------------------------
    std::vector<Segment> segments = segment_path(path, t);
    Graph h_prime = auxiliary_graph(GW, segments);
    const GoodQuadruple& hq = cfg.host_params.quad;
    ClassPParams hp_params{{2 * cfg.lower_quad.a, Rational(t) * hq.b, hq.c, hq.eps}, t, cfg.lower_n};
    Rational f_hprime;
    {
        Json d{{"vertices", h_prime.vertex_count()}, {"edges", h_prime.edge_count()}, {"maxDegree", max_degree(h_prime)}};
        bool holds = false;
        try {
            ClassPReport rep = verify_class_p(h_prime, hp_params, VerifyMode::automatic(cfg.budgets.verify_samples, cfg.seeds.verify));
            holds = rep.passed();
            f_hprime = rep.density.f_g;
            d["classCheck"] = to_json(rep);
        } catch (const DomainError& e) {
            d["classCheck"] = Json{{"evaluable", false}, {"reason", e.what()}};
        }
        if (f_hprime <= 0) {
            std::vector<Vertex> all(h_prime.vertex_count());
            for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
            f_hprime = h_prime.vertex_count() > 1 ? density_set(h_prime, all) : Rational(0);
        }
        d["fEstimate"] = to_json(f_hprime);
        if (hypothesis("aux-graph", "H' in P(2a, tB, C, t, delta, n)", holds, std::move(d))) return out;
    }

    // ---- sparsify and prune -------------------------------------------
    const GoodQuadruple& lq = cfg.lower_quad;
    Rational formula_p = f_hprime > 0 ? Rational(120) * lq.a / (lq.eps * lq.eps * lq.c * lq.c * f_hprime * cfg.lower_n) : Rational(1);
    Rational used_p = cfg.sparsify_p.value_or(formula_p > 1 ? Rational(1) : formula_p);
    Graph h2 = sparsify(h_prime, used_p, cfg.seeds.sparsify);
    if (h_prime.vertex_count() < an) return fail("prune", "H' has fewer than an vertices");
    PruneResult pruned = prune_top(h2, h_prime.vertex_count() - an);
    Graph H = pruned.kept.graph;
    trace.add("sparsify", "ok",
              Json{{"formulaP", to_json(formula_p)}, {"usedP", to_json(used_p)}, {"clamped", !cfg.sparsify_p && formula_p > 1},
                   {"edgesBefore", h_prime.edge_count()}, {"edgesAfter", h2.edge_count()}});
    {
        Json d{{"vertices", H.vertex_count()}, {"edges", H.edge_count()}, {"maxDegree", max_degree(H)}, {"removed", pruned.removed}};
        bool holds = false;
        try {
            ClassPReport rep = verify_class_p(H, ClassPParams{lq, t, cfg.lower_n},
                                              VerifyMode::automatic(cfg.budgets.verify_samples, derive_seed(cfg.seeds.verify, 1)));
            holds = rep.passed();
            d["classCheck"] = to_json(rep);
        } catch (const DomainError& e) {
            d["classCheck"] = Json{{"evaluable", false}, {"reason", e.what()}};
        }
        if (hypothesis("prune", "H in P(a, b, c, t, eps, n)", holds, std::move(d))) return out;
    }

    // ---- grey template -------------------------------------------------
    std::vector<Segment> h_segments;
    for (Vertex i = 0; i < H.vertex_count(); ++i) h_segments.push_back({i, segments[pruned.kept.origin[i]].vertices});
    TemplateOptions topt;
    topt.R = R;
    topt.aux = &aux;
    topt.base = &GW;
    TemplateReport tmpl = check_template_containment(H, cfg.r, t, h_segments, J, topt);
    if (!tmpl.ok) return fail("template", tmpl.failure, to_json(tmpl));
    {
        std::size_t hr_edges = power(H, cfg.r).edge_count();
        Json d = to_json(tmpl);
        d["expectedEdges"] = sheared_blowup_edge_count(H.vertex_count(), hr_edges, t);
        if (tmpl.template_graph.edge_count() != sheared_blowup_edge_count(H.vertex_count(), hr_edges, t))
            throw InternalError("induction_step: template edge count differs from |E(H^r{t})|");
        trace.add("template", "ok", std::move(d));
    }

    // ---- Local Lemma embedding ------------------------------------------
    std::vector<std::vector<Vertex>> cliques;
    for (Vertex v : tmpl.origin) cliques.push_back(mono[W[v]].vertices);
    LLLInstance inst = build_lll_instance(tmpl.template_graph, std::move(cliques), chi, blue);
    const std::size_t budget = cfg.budgets.lll_resamples ? cfg.budgets.lll_resamples : std::max<std::size_t>(1, 100 * tmpl.template_graph.edge_count());
    try {
        LLLResult res = lll_embed(inst, cfg.seeds.lll, budget);
        Json d = to_json(res.stats);
        d["dependencyDegree"] = inst.dependency_degree;
        trace.add("lll", "ok", std::move(d));
        out.kind = OutcomeKind::ReducedColours;
        out.H = H;
        for (Colour c = 1; c <= s; ++c)
            if (c != blue) out.remaining_colours.push_back(c);
        out.template_embedding = std::move(res.embedding);
        return out;
    } catch (const LLLFailure& f) {
        Json d = to_json(f.stats());
        d["dependencyDegree"] = inst.dependency_degree;
        return fail("lll", f.what(), std::move(d));
    }
}

inline Json outcome_to_json(const StepOutcome& o) {
    Json out{{"schemaVersion", kSchemaVersion}, {"kind", to_string(o.kind)}};
    if (o.kind == OutcomeKind::MonoPowerFound) {
        out["colour"] = o.mono_colour;
        out["embedding"] = to_json(*o.mono_power);
    } else if (o.kind == OutcomeKind::ReducedColours) {
        out["H"] = to_json(*o.H);
        out["remainingColours"] = o.remaining_colours;
        out["template"] = to_json(*o.template_embedding);
    } else {
        out["stage"] = o.failed_stage;
        out["reason"] = o.reason;
        out["diagnostics"] = o.diagnostics;
    }
    return out;
}

inline Json trace_to_json(const StepOutcome& o) { return Json{{"schemaVersion", kSchemaVersion}, {"stages", o.trace}}; }

// ===========================================================================
// Base case driver

struct BaseCaseRun {
    bool ok = false;
    std::string reason;
    GoodnessReport goodness;
    std::optional<GenerationResult> generation;
    std::size_t achieved_path = 0;
    PathWitness path;
    std::optional<BaseCaseEmbedding> result;
    std::size_t girth_t_used = 0;   // t of the generated class
    std::size_t blowup_t = 0;       // k + 1
    std::string path_source = "partition";
};

/// Covers g with one path and two balanced classes with no edge between them,
/// then embeds P_n^k along the longest path of the cover into g^k{k+1}.
/// With `search_fallback`, a short cover path triggers a direct path search.
inline BaseCaseRun base_case_on_graph(const Graph& g, std::size_t k, const PipelineConfig& cfg, bool search_fallback = false) {
    if (k == 0) throw DomainError("base_case_on_graph: k must be positive");
    BaseCaseRun run;
    run.blowup_t = k + 1;
    PartitionResult part = partition_two_coloured(g, 1, cfg.budgets.partition_mode, cfg.seeds.partition, cfg.budgets.partition_restarts);
    for (const auto& p : part.blue_paths)
        if (p.vertices.size() > run.achieved_path) {
            run.achieved_path = p.vertices.size();
            run.path = p;
        }
    if (run.achieved_path < cfg.n && search_fallback) {
        // The cover only promises a long path for class members; on other
        // graphs a direct search may still find one.
        std::vector<Vertex> all(g.vertex_count());
        for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
        LongPathOptions opt;
        opt.precheck = false;
        opt.seed = cfg.seeds.path;
        opt.node_budget = cfg.budgets.path_nodes;
        try {
            run.path = long_path_through_sets(g, {all}, cfg.n, opt).path;
            run.achieved_path = run.path.vertices.size();
            run.path_source = "search";
        } catch (const NoPathFound& e) {
            run.achieved_path = std::max(run.achieved_path, e.best().vertices.size());
        }
    }
    if (run.achieved_path < cfg.n) {
        run.reason = "path shortfall: longest path found has " + std::to_string(run.achieved_path) + " < n = " + std::to_string(cfg.n) + " vertices";
        return run;
    }
    run.path.vertices.resize(cfg.n);
    run.path.class_trace.reset();
    run.result = embed_base_case(g, k, run.path);
    run.ok = true;
    return run;
}

/// Generates G from the host parameters and runs the base case on it.
/// Toy mode only insists on a >= 2c+1; paper mode needs a good quadruple.
inline BaseCaseRun base_case_driver(std::size_t k, const PipelineConfig& cfg) {
    if (k == 0) throw DomainError("base_case_driver: k must be positive");
    const GoodQuadruple& q = cfg.host_params.quad;
    GoodnessReport goodness = is_good(q);
    if (q.a < 2 * q.c + 1) throw DomainError("base_case_driver: a >= 2c+1 fails (a=" + to_string(q.a) + ", c=" + to_string(q.c) + ")");
    if (cfg.host_generation.mode == GenerationConfig::Mode::Paper && !goodness.good)
        throw DomainError("base_case_driver: quadruple is not good: " + goodness.failures.front());
    std::optional<GenerationResult> gen;
    try {
        gen = generate_class_p(cfg.host_params, cfg.host_generation);
    } catch (const CertificationFailure& e) {
        BaseCaseRun run;
        run.goodness = goodness;
        run.girth_t_used = cfg.host_params.t;
        run.blowup_t = k + 1;
        run.reason = std::string("generation: ") + e.what();
        return run;
    }
    BaseCaseRun run = base_case_on_graph(gen->graph, k, cfg);
    run.goodness = goodness;
    run.girth_t_used = cfg.host_params.t;
    run.generation = std::move(gen);
    return run;
}

inline Json to_json(const BaseCaseRun& run) {
    Json out{{"ok", run.ok},
             {"achievedPath", run.achieved_path},
             {"pathSource", run.path_source},
             {"girthTUsed", run.girth_t_used},
             {"blowupT", run.blowup_t},
             {"goodness", to_json(run.goodness)}};
    if (!run.ok) out["reason"] = run.reason;
    if (run.generation) out["baseGraph"] = Json{{"vertices", run.generation->graph.vertex_count()}, {"edges", run.generation->graph.edge_count()}};
    if (run.ok) {
        out["path"] = run.path.vertices;
        out["host"] = Json{{"vertices", run.result->host.host.vertex_count()}, {"edges", run.result->host.host.edge_count()}};
        out["embedding"] = to_json(run.result->embedding);
    }
    return out;
}

// ===========================================================================
// Edge budget of G^r{t}

struct EdgeBudget {
    std::size_t n = 0;
    std::size_t base_vertices = 0;
    std::size_t base_edges = 0;
    std::size_t max_degree = 0;
    std::size_t power_edges = 0;
    std::size_t r = 1, t = 1;
    std::size_t total = 0;              // |E(G^r)|(t^2 - t) + |V| C(t, 2)
    std::optional<std::size_t> built;   // edge count of the constructed host, when built
    Rational per_n;                     // total / n
};

inline EdgeBudget edge_budget(const Graph& g, std::size_t r, std::size_t t, std::size_t n, bool build = false) {
    if (r == 0 || t == 0 || n == 0) throw DomainError("edge_budget: r, t, n must be positive");
    EdgeBudget b;
    b.n = n;
    b.r = r;
    b.t = t;
    b.base_vertices = g.vertex_count();
    b.base_edges = g.edge_count();
    b.max_degree = max_degree(g);
    Graph gr = power(g, r);
    b.power_edges = gr.edge_count();
    b.total = sheared_blowup_edge_count(b.base_vertices, b.power_edges, t);
    if (build) b.built = sheared_blowup(gr, t).host.edge_count();
    b.per_n = Rational(b.total, n);
    return b;
}

struct EdgeBudgetSweep {
    std::vector<EdgeBudget> points;
    Rational max_ratio;
    Rational cap;           // a (D_r (t^2 - t) / 2 + C(t, 2)), D_r = sum_{i<=r} b (b-1)^{i-1}
    bool bounded = false;   // every ratio at most the cap
};

// Per-n graphs come from `make_graph(n)`; all must share the degree bound b.
inline EdgeBudgetSweep edge_budget_sweep(const std::vector<std::size_t>& ns, std::size_t r, std::size_t t, const Rational& a,
                                         std::size_t b, const std::function<Graph(std::size_t)>& make_graph) {
    EdgeBudgetSweep sweep;
    BigInt dr = 0, layer = b;
    for (std::size_t i = 1; i <= r; ++i) {
        dr += layer;
        layer *= (b > 0 ? b - 1 : 0);
    }
    sweep.cap = a * (Rational(dr) * (t * t - t) / 2 + Rational(t * (t - 1) / 2));
    sweep.bounded = true;
    for (std::size_t n : ns) {
        Graph g = make_graph(n);
        if (max_degree(g) > b) throw PreconditionError("edge_budget_sweep: graph for n=" + std::to_string(n) + " exceeds the degree bound");
        EdgeBudget e = edge_budget(g, r, t, n);
        if (e.per_n > sweep.max_ratio) sweep.max_ratio = e.per_n;
        if (e.per_n > sweep.cap * Rational(ClassPParams::scaled(a, n), n) / a) sweep.bounded = false;
        sweep.points.push_back(std::move(e));
    }
    return sweep;
}

inline Json to_json(const EdgeBudget& b) {
    Json out{{"n", b.n}, {"baseVertices", b.base_vertices}, {"baseEdges", b.base_edges}, {"maxDegree", b.max_degree},
             {"powerEdges", b.power_edges}, {"r", b.r}, {"t", b.t}, {"total", b.total}, {"perN", to_json(b.per_n)}};
    if (b.built) out["built"] = *b.built;
    return out;
}

inline Json to_json(const EdgeBudgetSweep& s) {
    Json pts = Json::array();
    for (const auto& p : s.points) pts.push_back(to_json(p));
    return Json{{"points", pts}, {"maxRatio", to_json(s.max_ratio)}, {"cap", to_json(s.cap)}, {"bounded", s.bounded}};
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_PIPELINE_HPP
