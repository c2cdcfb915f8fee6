#include "gspdom/errors.hpp"
#include "gspdom/generator.hpp"
#include "gspdom/oracle.hpp"

#include <doctest.h>

#include "testutil.hpp"

using namespace gspdom;

TEST_CASE("brute_solve fixtures") {
    Graph p3 = build_graph({{"a", "b"}, {"b", "c"}});
    auto r = brute_solve(Variant::One2, p3);
    CHECK(r.feasible);
    CHECK(r.value == 1);
    CHECK(r.witness.to_vector() == std::vector<VertexId>{*p3.find_label("b")});

    // on C4 the lexicographically least optimum is the first adjacent pair
    Graph c4 = build_graph({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
    auto rc = brute_solve(Variant::One2, c4);
    CHECK(rc.value == 2);
    CHECK(rc.witness.to_vector() == std::vector<VertexId>{0, 1});

    Graph k2 = build_graph({{"a", "b"}});
    auto rk = brute_solve(Variant::Total12, k2);
    CHECK(rk.feasible);
    CHECK(rk.value == 2);
}

TEST_CASE("spider S(2,2,2) has no total [1,2]-set") {
    // every leg end forces its mid vertex into S, overloading the center
    Graph spider = build_graph({{"c", "a1"}, {"a1", "b1"}, {"c", "a2"},
                                {"a2", "b2"}, {"c", "a3"}, {"a3", "b3"}});
    auto r = brute_solve(Variant::Total12, spider);
    CHECK(!r.feasible);
    auto r12 = brute_solve(Variant::One2, spider);
    CHECK(r12.feasible);
}

TEST_CASE("brute_solve is deterministic and never infeasible for one2") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.target_leaves = 1 + static_cast<int>(seed % 9);
        Graph g = flatten(gen_expression(cfg)).graph;
        if (g.vertex_count() > 14) continue;
        auto a = brute_solve(Variant::One2, g);
        auto b = brute_solve(Variant::One2, g);
        CHECK(a.feasible);
        CHECK(a.value == b.value);
        CHECK(a.witness == b.witness);
    }
}

TEST_CASE("brute_solve size guard") {
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i + 1 < 26; ++i) {
        edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1));
    }
    Graph p26 = build_graph(edges);
    CHECK_THROWS_AS(brute_solve(Variant::One2, p26), Error);
}

TEST_CASE("brute_node_table on a single edge equals the leaf tables") {
    Graph k2 = build_graph({{"x", "y"}});
    for (Variant v : {Variant::One2, Variant::Total12}) {
        DpTable b = brute_node_table(v, k2, {0, 1});
        CHECK(leaf_table(v).values_equal(b));
    }
}

TEST_CASE("brute_node_table on P3 with end terminals") {
    Graph p3 = build_graph({{"a", "b"}, {"b", "c"}});
    DpTable t = brute_node_table(Variant::One2, p3, {0, 2});
    CHECK(t.value(testutil::one2_state(1, 0), testutil::one2_state(1, 0)) == 1);
    CHECK(t.value(testutil::one2_state(0, 0), testutil::one2_state(0, 0)) == 2);
    CHECK(!t.feasible(testutil::one2_state(0, 1), testutil::one2_state(0, 1)));
}

TEST_CASE("brute_node_table guards") {
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i + 1 < 13; ++i) {
        edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1));
    }
    Graph p13 = build_graph(edges);
    CHECK_THROWS_AS(brute_node_table(Variant::One2, p13, {0, 1}), Error);

    Graph k2 = build_graph({{"x", "y"}});
    CHECK_THROWS_AS(brute_node_table(Variant::One2, k2, {0, 0}), Error);
}
