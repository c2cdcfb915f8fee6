#include "gspdom/errors.hpp"
#include "gspdom/generator.hpp"
#include "gspdom/recognize.hpp"

#include <doctest.h>

using namespace gspdom;

TEST_CASE("gen_expression base case and determinism") {
    GenConfig one;
    one.seed = 1;
    one.target_leaves = 1;
    CHECK(render_expression(gen_expression(one)) == "e(v0,v1)");

    GenConfig cfg;
    cfg.seed = 42;
    cfg.target_leaves = 33;
    CHECK(render_expression(gen_expression(cfg)) == render_expression(gen_expression(cfg)));

    GenConfig other = cfg;
    other.seed = 43;
    CHECK(render_expression(gen_expression(cfg)) != render_expression(gen_expression(other)));

    GenConfig prefixed = cfg;
    prefixed.label_prefix = "node";
    GspExpression e = gen_expression(prefixed);
    CHECK(e.label(0).substr(0, 4) == "node");
}

TEST_CASE("gen_expression hits the leaf budget with a simple connected result") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.target_leaves = 1 + static_cast<int>(seed % 40);
        GspExpression e = gen_expression(cfg);
        CHECK(e.leaf_count() == cfg.target_leaves);
        auto flat = flatten(e);  // throws on a multi-edge
        CHECK(flat.graph.edge_count() == cfg.target_leaves);
        CHECK(flat.graph.connected());
    }
}

TEST_CASE("generated instances are recognizable") {
    for (std::uint64_t seed = 2000; seed < 2200; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.target_leaves = 1 + static_cast<int>(seed % 50);
        CHECK(recognize(flatten(gen_expression(cfg)).graph).ok());
    }
}

TEST_CASE("zero gen-series weight yields pure series-parallel output") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.target_leaves = 1 + static_cast<int>(seed % 25);
        cfg.op_weights = {1.0, 1.0, 0.0};
        GspExpression e = gen_expression(cfg);
        for (const ExprNode& n : e.nodes()) {
            CHECK(n.kind != OpKind::GenSeries);
        }
    }
}

TEST_CASE("gen_expression validates its config") {
    GenConfig bad;
    bad.target_leaves = 0;
    CHECK_THROWS_AS(gen_expression(bad), Error);

    GenConfig zero;
    zero.target_leaves = 3;
    zero.op_weights = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(gen_expression(zero), Error);

    GenConfig negative;
    negative.target_leaves = 3;
    negative.op_weights = {1.0, -1.0, 0.0};
    CHECK_THROWS_AS(gen_expression(negative), Error);
}
