#include "sizeramsey/graph.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace sizeramsey {
namespace {

using testing::edge_set;
using testing::floyd_warshall;
using testing::random_graph;

TEST(Graph, RejectsSelfLoopsAndOutOfRange) {
    std::vector<Edge> loop{{1, 1}};
    EXPECT_THROW(Graph(3, loop), DomainError);
    std::vector<Edge> far{{0, 3}};
    EXPECT_THROW(Graph(3, far), DomainError);
}

TEST(Graph, MergesDuplicatesAndKeepsAdjacencySymmetric) {
    std::vector<Edge> edges{{0, 1}, {1, 0}, {2, 1}};
    Graph g(3, edges);
    EXPECT_EQ(g.edge_count(), 2u);
    std::size_t degree_sum = 0;
    for (Vertex v = 0; v < 3; ++v) {
        degree_sum += g.degree(v);
        for (Vertex w : g.neighbours(v)) EXPECT_TRUE(g.has_edge(w, v));
    }
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(Power, FixedExamples) {
    EXPECT_EQ(power(path_graph(4), 1), path_graph(4));
    EXPECT_EQ(power(path_graph(4), 3), complete_graph(4));
    // P_5 on vertices 1..5 in the usual labelling; here 0..4.
    Graph p52 = power(path_graph(5), 2);
    std::set<std::pair<Vertex, Vertex>> expected{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 2}, {1, 3}, {2, 4}};
    EXPECT_EQ(edge_set(p52), expected);
}

TEST(Power, DifferentComponentsNeverJoined) {
    Graph g = disjoint_union(path_graph(3), path_graph(3));
    Graph big = power(g, 10);
    EXPECT_EQ(big.edge_count(), 6u);
    EXPECT_FALSE(big.has_edge(0, 3));
}

TEST(Power, MatchesAllPairsOracle) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::size_t n = 1 + seed % 50;
        Graph g = random_graph(n, 0.04 + 0.01 * (seed % 7), seed);
        auto dist = floyd_warshall(g);
        for (std::size_t k = 1; k <= 4; ++k) {
            Graph gk = power(g, k);
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) ASSERT_EQ(gk.has_edge(u, v), dist[u][v] <= k) << seed << " " << k;
        }
    }
}

TEST(Power, IteratedPowerContainment) {
    // Only power(g, j*k) ⊇ power(power(g, j), k) holds in general.
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = random_graph(18, 0.12, seed + 100);
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t k = 1; k <= 3; ++k) EXPECT_TRUE(is_subgraph(power(power(g, j), k), power(g, j * k)));
    }
}

TEST(PathPower, EdgeCounts) {
    EXPECT_EQ(path_power(3, 1).edge_count(), 2u);
    EXPECT_EQ(path_power(5, 2).edge_count(), 7u);
    EXPECT_EQ(path_power(4, 5), complete_graph(4));
    for (std::size_t n = 2; n < 20; ++n)
        for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(path_power(n, k).edge_count(), n * k - k * (k + 1) / 2);
    EXPECT_EQ(path_power(7, 3), power(path_graph(7), 3));
}

TEST(Girth, CycleExamples) {
    EXPECT_FALSE(girth_violation(cycle_graph(5), 4).has_value());
    auto five = girth_violation(cycle_graph(5), 5);
    ASSERT_TRUE(five.has_value());
    EXPECT_EQ(five->size(), 5u);
    EXPECT_TRUE(testing::is_valid_cycle(cycle_graph(5), *five));
    auto tri = girth_violation(complete_graph(4), 3);
    ASSERT_TRUE(tri.has_value());
    EXPECT_EQ(tri->size(), 3u);
    EXPECT_TRUE(testing::is_valid_cycle(complete_graph(4), *tri));
    EXPECT_THROW(girth_violation(cycle_graph(5), 2), DomainError);
}

TEST(Girth, ShortestCycleMatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        Graph g = random_graph(10, 0.15 + 0.02 * (seed % 5), seed + 7);
        std::size_t girth = testing::brute_force_girth(g);
        auto found = girth_violation(g, 10);
        if (girth == 0) {
            EXPECT_FALSE(found.has_value());
        } else {
            ASSERT_TRUE(found.has_value());
            EXPECT_EQ(found->size(), girth);
            EXPECT_TRUE(testing::is_valid_cycle(g, *found));
            EXPECT_FALSE(girth_violation(g, girth - 1 < 3 ? 3 : girth - 1).has_value() && girth > 3);
        }
    }
}

TEST(Density, SetExamples) {
    std::vector<Vertex> all{0, 1, 2, 3};
    EXPECT_EQ(density_set(complete_graph(4), all), Rational(1));
    EXPECT_EQ(density_set(Graph(4), all), Rational(0));
    // P_5 = 0-1-2-3-4; {1,2,3} in 1-based labels is {0,1,2}.
    std::vector<Vertex> s{0, 1, 2};
    EXPECT_EQ(density_set(path_graph(5), s), Rational(2, 3));
    std::vector<Vertex> one{0};
    EXPECT_THROW(density_set(path_graph(5), one), DomainError);
}

TEST(Density, PairExamples) {
    Graph kb = complete_bipartite_graph(2, 3);
    std::vector<Vertex> x{0, 1}, y{2, 3, 4};
    EXPECT_EQ(density_pair(kb, x, y), Rational(1));
    EXPECT_EQ(density_pair(Graph(5), x, y), Rational(0));
    std::vector<Vertex> ev{0, 2}, od{1, 3};
    EXPECT_EQ(density_pair(path_graph(4), ev, od), Rational(3, 4));
    std::vector<Vertex> overlap{1, 2};
    EXPECT_THROW(density_pair(path_graph(4), ev, overlap), DomainError);
    std::vector<Vertex> none;
    EXPECT_THROW(density_pair(path_graph(4), none, od), DomainError);
}

TEST(Measurements, DegreeAndDistances) {
    EXPECT_EQ(max_degree(cycle_graph(5)), 2u);
    EXPECT_EQ(max_degree(complete_graph(5)), 4u);
    EXPECT_EQ(distances(path_graph(4), 0), (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(distances(disjoint_union(path_graph(2), path_graph(1)), 0)[2], kUnreachable);
}

TEST(EdgeList, RoundTripIsByteStable) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = random_graph(15, 0.3, seed);
        std::string text = to_edge_list(g);
        Graph back = parse_edge_list(text);
        EXPECT_EQ(back, g);
        EXPECT_EQ(to_edge_list(back), text);
    }
    EXPECT_EQ(to_edge_list(path_graph(3)), "3 2\n0 1\n1 2\n");
}

TEST(EdgeList, RejectsMalformedInput) {
    EXPECT_THROW(parse_edge_list(""), ParseError);
    EXPECT_THROW(parse_edge_list("3 1\n1 0\n"), ParseError);
    EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), ParseError);
    EXPECT_THROW(parse_edge_list("3 1\n0 5\n"), ParseError);
    EXPECT_THROW(parse_edge_list("3 2\n0 1\n0 1\n"), ParseError);
    EXPECT_THROW(parse_edge_list("3 1\n0 1\n1 2\n"), ParseError);
}

}  // namespace
}  // namespace sizeramsey
