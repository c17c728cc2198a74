#include <gtest/gtest.h>

#include "cmrep/graphs.hpp"
#include "cmrep/polynomials.hpp"
#include "support.hpp"

using namespace cmrep;

namespace {

std::vector<std::vector<int>> tree_lines(const std::vector<TreeSet>& trees) {
    std::vector<std::vector<int>> out;
    for (const auto& t : trees) out.push_back(t.lines);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Graphs, BubbleSpanningTrees) {
    auto g = support::graph("bubble").graph;
    EXPECT_EQ(tree_lines(spanning_trees(g)), (std::vector<std::vector<int>>{{1}, {2}}));
}

TEST(Graphs, TriangleTreesAndTwoTrees) {
    auto g = support::graph("triangle").graph;
    EXPECT_EQ(spanning_trees(g).size(), 3u);
    auto forests = two_trees(g);
    EXPECT_EQ(forests.size(), 3u);
    for (const auto& f : forests) {
        EXPECT_EQ(f.kind, TreeKind::two_tree);
        EXPECT_EQ(f.lines.size(), 1u);
        EXPECT_EQ(f.side_a.size() + f.side_b.size(), 3u);
    }
}

TEST(Graphs, SelfLoopNeverInTree) {
    FeynmanGraph g({"a", "b"}, {{1, "a", "a", 0}, {2, "a", "b", 0}});
    auto trees = spanning_trees(g);
    ASSERT_EQ(trees.size(), 1u);
    EXPECT_EQ(trees[0].lines, std::vector<int>{2});
}

TEST(Graphs, DisconnectedGraphNamesComponents) {
    FeynmanGraph g({"a", "b", "c"}, {{1, "a", "b", 0}});
    try {
        spanning_trees(g);
        FAIL() << "expected DisconnectedGraphError";
    } catch (const DisconnectedGraphError& e) {
        ASSERT_EQ(e.components().size(), 2u);
        EXPECT_EQ(e.components()[1], std::vector<std::string>{"c"});
    }
}

TEST(Graphs, RejectsBadLineIds) {
    EXPECT_THROW(FeynmanGraph({"a", "b"}, {{2, "a", "b", 0}}), ValidationError);
    EXPECT_THROW(FeynmanGraph({"a"}, {{1, "a", "z", 0}}), ValidationError);
}

TEST(Graphs, SubsetScanAndContractionAgree) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t L = 1 + trial % 8;
        std::size_t V = 1 + rng() % std::min<std::size_t>(L + 1, 5);
        auto g = support::random_multigraph(rng, V, L);
        auto a = spanning_trees_by_subset_scan(g);
        auto b = spanning_trees_by_contraction(g);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b);
    }
}

TEST(Graphs, TreeCountMatchesKirchhoff) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t L = 1 + trial % 9;
        std::size_t V = 1 + rng() % std::min<std::size_t>(L + 1, 6);
        auto g = support::random_multigraph(rng, V, L);
        EXPECT_EQ(Rational(spanning_trees(g).size()), oracle::kirchhoff_count(g));
    }
}

TEST(Symanzik, BubbleClosedForm) {
    auto g = support::graph("bubble").graph;
    auto U = symanzik_u(g), V = symanzik_v(g);
    EXPECT_EQ(U.render("a"), "a2 + a1");
    EXPECT_EQ(V.render("a"), "s*a1*a2");
}

TEST(Symanzik, SingleVertexHasEmptyV) {
    FeynmanGraph g({"a"}, {{1, "a", "a", 1}});
    EXPECT_TRUE(symanzik_v(g).empty());
    EXPECT_EQ(symanzik_u(g).render("a"), "a1");
}

TEST(Symanzik, MissingInvariantIsReported) {
    FeynmanGraph g({"a", "b"}, {{1, "a", "b", 0}}, {{"a", "p1"}, {"b", "p2"}});
    EXPECT_THROW(symanzik_v(g), ValidationError);
}

TEST(Symanzik, CorpusMatchesDefinition) {
    for (const char* name : {"single_line", "tree", "bubble", "triangle"}) {
        auto g = support::graph(name).graph;
        EXPECT_EQ(support::as_map(symanzik_u(g)), oracle::symanzik_u(g)) << name;
        EXPECT_EQ(support::as_map(symanzik_v(g)), oracle::symanzik_v(g)) << name;
    }
}

TEST(Symanzik, RandomMultigraphsMatchDefinition) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t L = 1 + trial % 5;
        std::size_t V = 1 + rng() % std::min<std::size_t>(L + 1, 5);
        auto g = support::random_multigraph(rng, V, L);
        EXPECT_EQ(support::as_map(symanzik_u(g)), oracle::symanzik_u(g));
        EXPECT_EQ(support::as_map(symanzik_v(g)), oracle::symanzik_v(g));
    }
}

TEST(Symanzik, UIsHomogeneousOfLoopDegree) {
    auto g = support::graph("triangle").graph;
    for (const auto& m : symanzik_u(g).monomials) EXPECT_EQ(m.degree(), 1);
    for (const auto& m : symanzik_v(g).monomials) EXPECT_EQ(m.degree(), 2);
}
