#include "sizeramsey/pipeline.hpp"

#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

namespace sizeramsey {
namespace {

using testing::floyd_warshall;
using testing::random_graph;

// Checks that `map` carries P_n^k into `host` with every image edge coloured
// `colour`, using only the definition of the path power.
::testing::AssertionResult is_mono_path_power(const std::vector<Vertex>& map, std::size_t n, std::size_t k, const Graph& host,
                                              const EdgeColouring& chi, Colour colour) {
    if (map.size() != n) return ::testing::AssertionFailure() << "map has " << map.size() << " vertices";
    if (std::set<Vertex>(map.begin(), map.end()).size() != n) return ::testing::AssertionFailure() << "map not injective";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n && j <= i + k; ++j) {
            if (!host.has_edge(map[i], map[j])) return ::testing::AssertionFailure() << "missing edge " << i << "," << j;
            if (chi.colour_of(map[i], map[j]) != colour) return ::testing::AssertionFailure() << "wrong colour at " << i << "," << j;
        }
    return ::testing::AssertionSuccess();
}

Json toy_json() {
    return Json::parse(R"({"k":1,"s":2,"r":1,"t":2,"n":4,"T":6,"Tprime":4,
        "host":{"a":2,"b":100,"c":"1/2","eps":"1/2","t":1,"n":16,"p":"9/10","sample_tolerance":"1/2"},
        "lower":{"a":2,"b":100,"c":"1/2","eps":"1/2","n":4},
        "colouring":{"kind":"no-blue-biclique"}})");
}

PipelineConfig small_config(std::size_t T, std::size_t T_prime, std::size_t s = 2) {
    PipelineConfig cfg;
    cfg.k = 1;
    cfg.s = s;
    cfg.r = 1;
    cfg.t = 2;
    cfg.n = 4;
    cfg.T = T;
    cfg.T_prime = T_prime;
    return cfg;
}

TEST(InductionStep, ConstantColouringOnThirtyVertexHost) {
    Graph g = cycle_graph(5);
    for (Colour colour : {Colour{1}, Colour{2}}) {
        PipelineConfig cfg = small_config(6, 4);
        Blowup host = sheared_blowup(power(g, cfg.host_power()), cfg.T);
        ASSERT_EQ(host.host.vertex_count(), 30u);
        EdgeColouring chi = EdgeColouring::constant(host.host, 2, colour);
        StepOutcome o = induction_step(g, host, chi, cfg);
        ASSERT_EQ(o.kind, OutcomeKind::MonoPowerFound) << dump(trace_to_json(o));
        EXPECT_EQ(o.mono_colour, colour);
        EXPECT_TRUE(is_mono_path_power(o.mono_power->map, cfg.n, cfg.k, host.host, chi, colour));
        EXPECT_EQ(o.trace.back()["stage"], "blue-power");
    }
}

TEST(InductionStep, SingleColourGoesToBaseCase) {
    for (std::size_t k : {1u, 2u}) {
        Graph g = path_graph(10);
        PipelineConfig cfg = small_config(k + 1, 1, 1);
        cfg.k = k;
        cfg.n = 10;
        cfg.R = k;
        Blowup host = sheared_blowup(power(g, k), k + 1);
        EdgeColouring chi = EdgeColouring::constant(host.host, 1, 1);
        StepOutcome o = induction_step(g, host, chi, cfg);
        ASSERT_EQ(o.kind, OutcomeKind::MonoPowerFound) << dump(trace_to_json(o));
        EXPECT_TRUE(is_mono_path_power(o.mono_power->map, 10, k, host.host, chi, 1));
        ASSERT_EQ(o.trace.size(), 2u);
        EXPECT_EQ(o.trace[1]["stage"], "base-case");
    }
}

TEST(InductionStep, SingleColourShortBaseFailsHonestly) {
    Graph g = path_graph(5);
    PipelineConfig cfg = small_config(2, 1, 1);
    cfg.n = 6;
    Blowup host = sheared_blowup(power(g, 2), 2);
    StepOutcome o = induction_step(g, host, EdgeColouring::constant(host.host, 1, 1), cfg);
    EXPECT_EQ(o.kind, OutcomeKind::HonestFailure);
    EXPECT_EQ(o.failed_stage, "base-case");
}

TEST(InductionStep, AdversarialColouringReachesReducedColours) {
    Json j = toy_json();
    j["continue_on_hypothesis_failure"] = true;
    PipelineConfig cfg = read_pipeline_config(j);
    StepHost sh = build_step_host(cfg);
    EdgeColouring chi = make_colouring(sh.host, cfg.s, cfg.colouring, cfg.seeds.colouring);
    StepOutcome o = induction_step(sh.g, sh.host, chi, cfg);
    ASSERT_EQ(o.kind, OutcomeKind::ReducedColours) << dump(trace_to_json(o));
    EXPECT_EQ(o.remaining_colours, std::vector<Colour>{2});

    std::vector<std::string> stages;
    for (const auto& s : o.trace) stages.push_back(s["stage"]);
    std::vector<std::string> expected{"input",     "mono-cliques", "colour-choice", "aux-colouring", "partition", "long-path-size",
                                      "long-path", "aux-graph",    "sparsify",      "prune",         "template",  "lll"};
    EXPECT_EQ(stages, expected);

    // The auxiliary colouring has no blue edge at all.
    EXPECT_EQ(o.trace[3]["details"]["blueEdges"], 0);

    // The template is H^r{t}: t |V(H)| vertices, and between two clique
    // positions of H-distance at most r every pair except the matching.
    const Graph& H = *o.H;
    const Embedding& e = *o.template_embedding;
    const std::size_t t = cfg.t;
    ASSERT_EQ(e.pattern.vertex_count(), t * H.vertex_count());
    auto d = floyd_warshall(H);
    std::size_t expected_edges = 0;
    for (Vertex u = 0; u < H.vertex_count(); ++u) {
        expected_edges += t * (t - 1) / 2;
        for (Vertex v = u + 1; v < H.vertex_count(); ++v)
            if (d[u][v] <= cfg.r) expected_edges += t * t - t;
    }
    EXPECT_EQ(e.pattern.edge_count(), expected_edges);

    // The embedding avoids colour 1 on every pattern edge.
    std::set<Vertex> image(e.map.begin(), e.map.end());
    EXPECT_EQ(image.size(), e.map.size());
    for (const Edge& pe : e.pattern.edges()) {
        ASSERT_TRUE(sh.host.host.has_edge(e.map[pe.u], e.map[pe.v]));
        EXPECT_NE(chi.colour_of(e.map[pe.u], e.map[pe.v]), 1);
    }
}

TEST(InductionStep, AdversarialColouringStopsAtFirstFailedHypothesis) {
    PipelineConfig cfg = read_pipeline_config(toy_json());
    StepHost sh = build_step_host(cfg);
    EdgeColouring chi = make_colouring(sh.host, cfg.s, cfg.colouring, cfg.seeds.colouring);
    StepOutcome o = induction_step(sh.g, sh.host, chi, cfg);
    ASSERT_EQ(o.kind, OutcomeKind::HonestFailure);
    EXPECT_EQ(o.failed_stage, "aux-graph");
    EXPECT_EQ(o.trace.back()["status"], "failed");
    Json out = outcome_to_json(o);
    EXPECT_EQ(out["kind"], "honestFailure");
    EXPECT_EQ(out["diagnostics"]["holds"], false);
}

TEST(InductionStep, TinyLllBudgetEndsCleanly) {
    Json j = toy_json();
    j["continue_on_hypothesis_failure"] = true;
    j["budgets"] = {{"lll_resamples", 1}};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        PipelineConfig cfg = read_pipeline_config(j, seed);
        StepHost sh = build_step_host(cfg);
        EdgeColouring chi = make_colouring(sh.host, cfg.s, cfg.colouring, cfg.seeds.colouring);
        StepOutcome o = induction_step(sh.g, sh.host, chi, cfg);
        if (o.kind == OutcomeKind::HonestFailure) {
            EXPECT_TRUE(o.failed_stage == "lll" || o.failed_stage == "long-path" || o.failed_stage == "template") << o.failed_stage;
        } else {
            EXPECT_EQ(o.kind, OutcomeKind::ReducedColours);
        }
    }
}

TEST(InductionStep, RandomColouringsWithGuaranteedSubcliques) {
    // T = 6 forces a monochromatic triangle in every clique for two colours.
    Graph g = cycle_graph(7);
    PipelineConfig cfg = small_config(6, 3);
    cfg.continue_on_hypothesis_failure = true;
    Blowup host = sheared_blowup(power(g, cfg.host_power()), cfg.T);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EdgeColouring chi = make_colouring(host, 2, "random", seed);
        StepOutcome o = induction_step(g, host, chi, cfg);
        EXPECT_NE(o.failed_stage, "mono-cliques");
        if (o.kind == OutcomeKind::MonoPowerFound) {
            EXPECT_TRUE(is_mono_path_power(o.mono_power->map, cfg.n, cfg.k, host.host, chi, o.mono_colour));
        }
    }
}

TEST(InductionStep, MismatchedInputsRejected) {
    Graph g = cycle_graph(5);
    PipelineConfig cfg = small_config(6, 4);
    Blowup wrong_t = sheared_blowup(power(g, 2), 5);
    StepOutcome o = induction_step(g, wrong_t, EdgeColouring::constant(wrong_t.host, 2, 1), cfg);
    EXPECT_EQ(o.failed_stage, "input");
    Blowup wrong_power = sheared_blowup(power(g, 1), 6);
    o = induction_step(g, wrong_power, EdgeColouring::constant(wrong_power.host, 2, 1), cfg);
    EXPECT_EQ(o.failed_stage, "input");
    Blowup plain = complete_blowup(power(g, 2), 6);
    o = induction_step(g, plain, EdgeColouring::constant(plain.host, 2, 1), cfg);
    EXPECT_EQ(o.failed_stage, "input");
}

TEST(InductionStep, Deterministic) {
    Json j = toy_json();
    j["continue_on_hypothesis_failure"] = true;
    auto run = [&] {
        PipelineConfig cfg = read_pipeline_config(j, 11);
        StepHost sh = build_step_host(cfg);
        EdgeColouring chi = make_colouring(sh.host, cfg.s, cfg.colouring, cfg.seeds.colouring);
        StepOutcome o = induction_step(sh.g, sh.host, chi, cfg);
        return dump(outcome_to_json(o)) + dump(trace_to_json(o));
    };
    EXPECT_EQ(run(), run());
}

TEST(BaseCaseDriver, EmbedsPathPowers) {
    PipelineConfig cfg = read_pipeline_config(toy_json());
    cfg.n = 20;
    for (std::size_t k : {1u, 2u}) {
        BaseCaseRun run = base_case_driver(k, cfg);
        ASSERT_TRUE(run.ok) << run.reason;
        EXPECT_GE(run.achieved_path, 20u);
        const Blowup& host = run.result->host;
        EXPECT_EQ(host.map.t, k + 1);
        EdgeColouring chi = EdgeColouring::constant(host.host, 1, 1);
        EXPECT_TRUE(is_mono_path_power(run.result->embedding.map, 20, k, host.host, chi, 1));
        // The host is the sheared blow-up of G^k.
        EXPECT_EQ(host.map.base, power(run.generation->graph, k));
    }
}

TEST(BaseCaseDriver, ShortfallReported) {
    PipelineConfig cfg = read_pipeline_config(toy_json());
    cfg.n = 1000;
    BaseCaseRun run = base_case_driver(1, cfg);
    EXPECT_FALSE(run.ok);
    EXPECT_NE(run.reason.find("shortfall"), std::string::npos);
    EXPECT_LT(run.achieved_path, 1000u);
}

TEST(BaseCaseDriver, RejectsSmallA) {
    PipelineConfig cfg = read_pipeline_config(toy_json());
    cfg.host_params.quad.a = Rational(3, 2);
    cfg.host_params.quad.c = Rational(1, 2);
    EXPECT_THROW(base_case_driver(1, cfg), DomainError);
    EXPECT_FALSE(is_good(cfg.host_params.quad).good);
}

TEST(EdgeBudget, SmallCases) {
    EXPECT_EQ(edge_budget(path_graph(5), 1, 1, 5).total, 0u);
    EdgeBudget k2 = edge_budget(complete_graph(2), 1, 2, 1, true);
    EXPECT_EQ(k2.total, 4u);
    EXPECT_EQ(k2.built, 4u);
}

TEST(EdgeBudget, FormulaMatchesConstruction) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = random_graph(3 + seed % 9, 0.3, seed);
        std::size_t r = 1 + seed % 3, t = 1 + seed % 4;
        EdgeBudget b = edge_budget(g, r, t, g.vertex_count(), true);
        EXPECT_EQ(b.total, *b.built);
        // Direct count from distances.
        auto d = floyd_warshall(g);
        std::size_t pairs = 0;
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            for (Vertex v = u + 1; v < g.vertex_count(); ++v) pairs += d[u][v] <= r;
        EXPECT_EQ(b.total, pairs * (t * t - t) + g.vertex_count() * t * (t - 1) / 2);
    }
}

TEST(EdgeBudget, LinearInN) {
    // Cycles of length 2n: degree 2 and 2n vertices, so a = 2 and b = 2.
    auto sweep = edge_budget_sweep({4, 8, 16, 32, 64}, 2, 3, Rational(2), 2, [](std::size_t n) { return cycle_graph(2 * n); });
    EXPECT_TRUE(sweep.bounded);
    EXPECT_LE(sweep.max_ratio, sweep.cap);
    for (const auto& p : sweep.points) EXPECT_EQ(p.per_n, sweep.points.front().per_n);
    EXPECT_THROW(edge_budget_sweep({4}, 1, 2, Rational(2), 1, [](std::size_t n) { return cycle_graph(n); }), PreconditionError);
}

}  // namespace
}  // namespace sizeramsey
