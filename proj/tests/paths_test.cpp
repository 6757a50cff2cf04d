#include "sizeramsey/paths.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace sizeramsey {
namespace {

using testing::random_graph;

// Blue graph of the colouring of K_n whose bits (canonical pair order) are 1 for blue.
Graph colouring_from_bits(std::size_t n, std::uint64_t bits) {
    std::vector<Edge> blue;
    std::size_t idx = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++idx)
            if (bits >> idx & 1) blue.push_back({u, v});
    return Graph(n, blue);
}

TEST(Partition, AllBlueK4) {
    auto r = partition_two_coloured(complete_graph(4), 1, PartitionMode::Exhaustive);
    EXPECT_TRUE(verify_partition(complete_graph(4), r, 1).ok);
    ASSERT_EQ(r.blue_paths.size(), 1u);
    EXPECT_EQ(r.blue_paths[0].vertices.size(), 4u);
    EXPECT_EQ(r.red_classes, (std::vector<std::vector<Vertex>>{{}, {}}));
}

TEST(Partition, AllRedK4) {
    auto r = partition_two_coloured(Graph(4), 1, PartitionMode::Exhaustive);
    EXPECT_TRUE(r.blue_paths.empty());
    EXPECT_EQ(r.red_classes, (std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}}));
}

TEST(Partition, K3WithOneBlueEdge) {
    std::vector<Edge> e{{0, 1}};
    Graph blue(3, e);
    auto r = partition_two_coloured(blue, 1, PartitionMode::Exhaustive);
    EXPECT_TRUE(verify_partition(blue, r, 1).ok);
    // Largest red part first: a single-vertex path plus two singleton classes.
    ASSERT_EQ(r.blue_paths.size(), 1u);
    EXPECT_EQ(r.blue_paths[0].vertices, std::vector<Vertex>{1});
    EXPECT_EQ(r.red_classes, (std::vector<std::vector<Vertex>>{{0}, {2}}));
}

TEST(VerifyPartition, RejectsBrokenCovers) {
    Graph blue = path_graph(4);
    PartitionResult red_inside{{{{0, 2}, std::nullopt}}, {{1}, {3}}};
    auto c1 = verify_partition(blue, red_inside, 1);
    EXPECT_FALSE(c1.ok);
    EXPECT_NE(c1.reason.find("{0,2}"), std::string::npos);
    PartitionResult unbalanced{{{{0, 1}, std::nullopt}}, {{2, 3}, {}}};
    auto c2 = verify_partition(Graph(4, std::vector<Edge>{{0, 1}}), unbalanced, 1);
    EXPECT_FALSE(c2.ok);
    EXPECT_EQ(c2.reason, "unbalanced");
    PartitionResult missing{{}, {{0}, {1}}};
    EXPECT_FALSE(verify_partition(Graph(4), missing, 1).ok);
    PartitionResult blue_cross{{{{1, 2}, std::nullopt}}, {{0}, {3}}};
    EXPECT_FALSE(verify_partition(Graph(4, std::vector<Edge>{{1, 2}, {0, 3}}), blue_cross, 1).ok);
}

TEST(Partition, EveryColouringUpToFiveVerticesTwoPaths) {
    for (std::size_t n = 1; n <= 5; ++n) {
        const std::size_t pairs = n * (n - 1) / 2;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
            Graph blue = colouring_from_bits(n, bits);
            for (std::size_t ell : {1u, 2u}) {
                auto r = partition_two_coloured(blue, ell, PartitionMode::Exhaustive);
                ASSERT_TRUE(verify_partition(blue, r, ell).ok) << n << " " << bits;
            }
        }
    }
}

TEST(Partition, HeuristicOnStructuredColourings) {
    for (std::size_t n : {14u, 20u, 30u}) {
        auto r = partition_two_coloured(complete_graph(n), 1, PartitionMode::Heuristic, 1);
        EXPECT_TRUE(verify_partition(complete_graph(n), r, 1).ok);
        auto red = partition_two_coloured(Graph(n), 2, PartitionMode::Heuristic, 1);
        EXPECT_TRUE(verify_partition(Graph(n), red, 2).ok);
        Graph two = disjoint_union(complete_graph(n / 2), complete_graph(n - n / 2));
        auto r2 = partition_two_coloured(two, 1, PartitionMode::Heuristic, 1);
        EXPECT_TRUE(verify_partition(two, r2, 1).ok);
    }
}

TEST(Partition, HeuristicIsHonestOnRandomColourings) {
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph blue = random_graph(20, 0.2 + 0.02 * static_cast<double>(seed), seed);
        try {
            auto r = partition_two_coloured(blue, 1, PartitionMode::Heuristic, seed);
            EXPECT_TRUE(verify_partition(blue, r, 1).ok);
            ++successes;
        } catch (const NoCoverFound&) {
        }
    }
    EXPECT_GT(successes, 0);
}

TEST(Partition, HeuristicAgreesWithExhaustiveValidity) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph blue = random_graph(10, 0.5, seed);
        EXPECT_TRUE(verify_partition(blue, partition_two_coloured(blue, 1, PartitionMode::Exhaustive), 1).ok);
        try {
            EXPECT_TRUE(verify_partition(blue, partition_two_coloured(blue, 1, PartitionMode::Heuristic, seed), 1).ok);
        } catch (const NoCoverFound&) {
        }
    }
}

TEST(LongPath, HamiltonInK4) {
    std::vector<std::vector<Vertex>> parts{{0, 1, 2, 3}};
    auto r = long_path_through_sets(complete_graph(4), parts, 4);
    EXPECT_EQ(r.path.vertices.size(), 4u);
    EXPECT_FALSE(check_path(complete_graph(4), r.path, &parts).has_value());
}

TEST(LongPath, AlternatingOnC6) {
    std::vector<std::vector<Vertex>> parts{{0, 2, 4}, {1, 3, 5}};
    auto r = long_path_through_sets(cycle_graph(6), parts, 6);
    ASSERT_EQ(r.path.vertices.size(), 6u);
    EXPECT_FALSE(check_path(cycle_graph(6), r.path, &parts).has_value());
    // Oracle: on C_6 every Hamilton path alternates parity, so six vertices suffice.
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(r.path.vertices[i] % 2, i % 2);
}

TEST(LongPath, TwoTrianglesFailPrecheck) {
    Graph g = disjoint_union(complete_graph(3), complete_graph(3));
    std::vector<std::vector<Vertex>> parts{{0, 2, 4}, {1, 3, 5}};
    LongPathOptions opt;
    opt.gamma = Rational(1, 2);
    try {
        long_path_through_sets(g, parts, 6, opt);
        FAIL() << "expected hypothesis failure";
    } catch (const HypothesisFailure& e) {
        EXPECT_EQ(e.x().size(), 3u);
        for (Vertex x : e.x())
            for (Vertex y : e.y()) EXPECT_FALSE(g.has_edge(x, y));
    }
}

TEST(LongPath, ImpossibleReportsLongestPath) {
    Graph g = path_graph(5);
    std::vector<std::vector<Vertex>> parts{{0, 1, 2, 3, 4}};
    try {
        long_path_through_sets(disjoint_union(g, g), {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}, 7);
        FAIL();
    } catch (const NoPathFound& e) {
        EXPECT_EQ(e.best().vertices.size(), 5u);
    }
    EXPECT_THROW(long_path_through_sets(g, parts, 3, {std::nullopt, true, 6}), PreconditionError);
}

TEST(LongPath, OutputsAlwaysValidate) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = random_graph(30, 0.25, seed);
        const std::size_t t = 1 + seed % 3;
        std::vector<std::vector<Vertex>> parts(t);
        for (Vertex v = 0; v < 30; ++v) parts[v % t].push_back(v);
        LongPathOptions opt;
        opt.seed = seed;
        opt.node_budget = 200000;
        try {
            auto r = long_path_through_sets(g, parts, 18, opt);
            EXPECT_EQ(r.path.vertices.size(), 18u);
            EXPECT_FALSE(check_path(g, r.path, &parts).has_value());
        } catch (const NoPathFound& e) {
            EXPECT_FALSE(check_path(g, e.best(), &parts).has_value());
        }
    }
}

TEST(Segments, Examples) {
    PathWitness six{{0, 1, 2, 3, 4, 5}, std::nullopt};
    EXPECT_EQ(segment_path(six, 3).size(), 2u);
    EXPECT_EQ(segment_path(six, 1).size(), 6u);
    PathWitness twelve;
    for (Vertex v = 0; v < 12; ++v) twelve.vertices.push_back(v);
    auto segs = segment_path(twelve, 4);
    ASSERT_EQ(segs.size(), 3u);
    EXPECT_EQ(segs[1].vertices, (std::vector<Vertex>{4, 5, 6, 7}));
    EXPECT_EQ(segs[2].index, 2u);
    EXPECT_THROW(segment_path(six, 4), DomainError);
}

TEST(AuxiliaryGraph, ConsecutiveSegmentsAdjacent) {
    PathWitness p;
    for (Vertex v = 0; v < 12; ++v) p.vertices.push_back(v);
    Graph h = auxiliary_graph(path_graph(12), segment_path(p, 3));
    EXPECT_EQ(h, path_graph(4));
    std::vector<Segment> overlap{{0, {0, 1}}, {1, {1, 2}}};
    EXPECT_THROW(auxiliary_graph(path_graph(12), overlap), DomainError);
}

TEST(AuxiliaryGraph, MatchesPairwiseOracle) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = random_graph(16, 0.15, seed);
        std::vector<Segment> segs;
        for (std::size_t i = 0; i < 8; ++i) segs.push_back({i, {static_cast<Vertex>(2 * i), static_cast<Vertex>(2 * i + 1)}});
        Graph h = auxiliary_graph(g, segs);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = i + 1; j < 8; ++j) {
                bool any = false;
                for (Vertex x : segs[i].vertices)
                    for (Vertex y : segs[j].vertices) any |= g.has_edge(x, y);
                EXPECT_EQ(h.has_edge(i, j), any);
            }
    }
}

TEST(AuxiliaryGraph, HighGirthGivesAtMostOneEdgePerSegmentPair) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = random_graph(24, 0.2, seed);
        const std::size_t t = 2;
        // Keep only edges that leave no cycle of length <= 2t.
        std::vector<Edge> kept;
        for (const Edge& e : g.edges()) {
            kept.push_back(e);
            if (girth_violation(Graph(24, kept), 2 * t)) kept.pop_back();
        }
        Graph sparse(24, kept);
        std::vector<Segment> segs;
        for (std::size_t i = 0; i < 12; ++i) segs.push_back({i, {static_cast<Vertex>(2 * i), static_cast<Vertex>(2 * i + 1)}});
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = i + 1; j < 12; ++j) {
                std::size_t count = 0;
                for (Vertex x : segs[i].vertices)
                    for (Vertex y : segs[j].vertices) count += sparse.has_edge(x, y);
                // Segments here need not be paths; two cross edges can close at most a 4-cycle
                // only when both segments are internally adjacent.
                if (sparse.has_edge(segs[i].vertices[0], segs[i].vertices[1]) &&
                    sparse.has_edge(segs[j].vertices[0], segs[j].vertices[1])) {
                    EXPECT_LE(count, 1u);
                }
            }
        (void)auxiliary_graph(sparse, segs);
    }
}

}  // namespace
}  // namespace sizeramsey
