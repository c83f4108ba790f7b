#include <gtest/gtest.h>

#include "support.hpp"

using namespace ucg;
using namespace testing_support;

TEST(Graph, RejectsSelfLoopsAndDuplicates) {
    EXPECT_THROW(Graph(3, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph(3, {{0, 1}, {0, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
}

TEST(Graph, AdjacencyIsSymmetricAndDegreesMatch) {
    Rng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        Graph g = random_graph(rng, 9, 0.4);
        std::size_t sum = 0;
        for (Vertex u = 0; u < g.n(); ++u) {
            sum += g.neighbors(u).size();
            EXPECT_EQ(g.degree(u), static_cast<int>(g.neighbors(u).size()));
            for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(g.has_edge(u, v), g.has_edge(v, u));
            for (Vertex v : g.neighbors(u)) EXPECT_TRUE(g.has_edge(u, v));
        }
        EXPECT_EQ(sum, 2 * g.m());
    }
}

TEST(UniformCluster, Examples) {
    EXPECT_EQ(is_uniform_cluster(disjoint_union(complete_graph(3), complete_graph(3))), 3);
    EXPECT_FALSE(is_uniform_cluster(path_graph(3)));
    EXPECT_FALSE(is_uniform_cluster(disjoint_union(complete_graph(2), complete_graph(1))));
    EXPECT_EQ(is_uniform_cluster(Graph(0)), 0);
}

TEST(InducedP3, Examples) {
    auto p = find_induced_p3(path_graph(3));
    ASSERT_TRUE(p);
    EXPECT_EQ(*p, (P3{0, 1, 2}));
    EXPECT_FALSE(find_induced_p3(complete_graph(3)));
    auto q = find_induced_p3(cycle_graph(4));
    ASSERT_TRUE(q);
    Graph c4 = cycle_graph(4);
    EXPECT_TRUE(c4.has_edge((*q)[0], (*q)[1]));
    EXPECT_TRUE(c4.has_edge((*q)[1], (*q)[2]));
    EXPECT_FALSE(c4.has_edge((*q)[0], (*q)[2]));
}

TEST(P3Packing, Examples) {
    EXPECT_TRUE(maximal_p3_packing(disjoint_union(complete_graph(3), complete_graph(2))).empty());
    EXPECT_EQ(maximal_p3_packing(disjoint_union(path_graph(3), path_graph(3))).size(), 2u);
    Graph p5 = path_graph(5);
    auto pk = maximal_p3_packing(p5);
    ASSERT_EQ(pk.size(), 1u);
    VertexSet used(pk[0].begin(), pk[0].end());
    std::sort(used.begin(), used.end());
    EXPECT_FALSE(has_p3_by_triples(induced_subgraph(p5, set_difference(all_vertices(5), used))));
}

TEST(P3Packing, RemainderIsClusterAndDisjoint) {
    Rng rng(11);
    for (int rep = 0; rep < 300; ++rep) {
        Graph g = random_graph(rng, rng.range(0, 12), rng.unit());
        auto pk = maximal_p3_packing(g);
        VertexSet used;
        for (const auto& p : pk) {
            EXPECT_TRUE(g.has_edge(p[0], p[1]));
            EXPECT_TRUE(g.has_edge(p[1], p[2]));
            EXPECT_FALSE(g.has_edge(p[0], p[2]));
            used.insert(used.end(), p.begin(), p.end());
        }
        std::sort(used.begin(), used.end());
        EXPECT_EQ(std::adjacent_find(used.begin(), used.end()), used.end());
        EXPECT_TRUE(cluster_components(induced_subgraph(g, set_difference(all_vertices(g.n()), used))));
        EXPECT_EQ(pk, maximal_p3_packing(g));  // deterministic
    }
}

TEST(ClusterComponents, Examples) {
    auto cc = cluster_components(disjoint_union(complete_graph(3), complete_graph(2)));
    ASSERT_TRUE(cc);
    EXPECT_EQ(*cc, (CliqueList{{0, 1, 2}, {3, 4}}));
    EXPECT_FALSE(cluster_components(path_graph(3)));
    auto empty = cluster_components(Graph(0));
    ASSERT_TRUE(empty);
    EXPECT_TRUE(empty->empty());
}

TEST(EdgeScore, Examples) {
    EXPECT_EQ(edge_score(path_graph(4), {1, 2}), 2);
    EXPECT_EQ(count_p3_with_edge(path_graph(4), {1, 2}), 2);
    EXPECT_EQ(edge_score(complete_graph(3), {0, 1}), 0);
    EXPECT_EQ(edge_score(star_graph(4), {0, 1}), 3);
    EXPECT_EQ(count_p3_with_edge(star_graph(4), {0, 1}), 3);
    EXPECT_THROW(edge_score(path_graph(3), {0, 2}), std::invalid_argument);
}

TEST(EdgeScore, MatchesTripleEnumeration) {
    Rng rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        Graph g = random_graph(rng, 8, rng.unit());
        for (Edge e : g.edges()) EXPECT_EQ(edge_score(g, e), count_p3_with_edge(g, e));
    }
}

TEST(TrueTwins, Examples) {
    EXPECT_TRUE(are_true_twins(complete_graph(3), 0, 1));
    EXPECT_FALSE(are_true_twins(path_graph(3), 0, 2));
    EXPECT_TRUE(are_true_twins(diamond(), 1, 2));
    EXPECT_FALSE(are_true_twins(diamond(), 0, 3));
}

TEST(GraphCore, ExhaustiveSmallGraphProperties) {
    for (int n = 0; n <= 6; ++n) {
        for_each_graph(n, [](const Graph& g) {
            const bool p3 = has_p3_by_triples(g);
            bool equal_sizes = true;
            auto comps = connected_components(g);
            for (const auto& c : comps) equal_sizes &= c.size() == comps[0].size();
            EXPECT_EQ(is_uniform_cluster(g).has_value(), !p3 && equal_sizes);
            EXPECT_EQ(find_induced_p3(g).has_value(), p3);
            EXPECT_EQ(cluster_components(g).has_value(), !p3);
            bool all_zero = true;
            for (Edge e : g.edges()) all_zero &= edge_score(g, e) == 0;
            EXPECT_EQ(all_zero, !p3);
        });
    }
}

TEST(GraphCore, ExhaustiveSevenVertexGraphs) {
    for_each_graph(7, [](const Graph& g) {
        const bool p3 = has_p3_by_triples(g);
        auto comps = connected_components(g);
        bool equal_sizes = true;
        for (const auto& c : comps) equal_sizes &= c.size() == comps[0].size();
        ASSERT_EQ(is_uniform_cluster(g).has_value(), !p3 && equal_sizes);
        ASSERT_EQ(find_induced_p3(g).has_value(), p3);
        bool all_zero = true;
        for (Edge e : g.edges()) all_zero &= edge_score(g, e) == 0;
        ASSERT_EQ(all_zero, !p3);
    });
}

TEST(TrueTwins, EquivalenceOnCliqueInterior) {
    Rng rng(3);
    for (int rep = 0; rep < 100; ++rep) {
        Graph g = random_graph(rng, 8, 0.6);
        auto comps = connected_components(g);
        for (const auto& c : comps) {
            for (Vertex a : c)
                for (Vertex b : c)
                    for (Vertex x : c) {
                        if (a == b || b == x || a == x) continue;
                        if (are_true_twins(g, a, b) && are_true_twins(g, b, x)) EXPECT_TRUE(are_true_twins(g, a, x));
                        EXPECT_EQ(are_true_twins(g, a, b), are_true_twins(g, b, a));
                    }
        }
    }
}
