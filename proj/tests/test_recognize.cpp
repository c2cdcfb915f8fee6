#include "gspdom/errors.hpp"
#include "gspdom/generator.hpp"
#include "gspdom/oracle.hpp"
#include "gspdom/recognize.hpp"

#include <doctest.h>

#include "testutil.hpp"

using namespace gspdom;

namespace {

Graph grid(int rows, int cols) {
    std::vector<std::pair<std::string, std::string>> edges;
    auto name = [](int r, int c) { return "g" + std::to_string(r) + "_" + std::to_string(c); };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(name(r, c), name(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(name(r, c), name(r + 1, c));
        }
    }
    return build_graph(edges);
}

bool same_graph(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    for (auto [u, v] : a.edges()) {
        auto bu = b.find_label(a.label(u));
        auto bv = b.find_label(a.label(v));
        if (!bu || !bv || !b.has_edge(*bu, *bv)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("recognize accepts a single edge") {
    auto r = recognize(build_graph({{"a", "b"}}));
    REQUIRE(r.ok());
    CHECK(r.expression->leaf_count() == 1);
    CHECK(r.residual_super_edges == 1);
}

TEST_CASE("recognize P4 and agree with a hand-written expression") {
    Graph p4 = build_graph({{"a", "b"}, {"b", "c"}, {"c", "d"}});
    auto r = recognize(p4);
    REQUIRE(r.ok());
    CHECK(r.expression->leaf_count() == 3);
    CHECK(same_graph(flatten(*r.expression).graph, p4));
    CHECK(solve(Variant::One2, *r.expression).value ==
          solve(Variant::One2, testutil::path_expr(4)).value);
}

TEST_CASE("recognize C3 via one series and one parallel reduction") {
    Graph c3 = build_graph({{"a", "b"}, {"b", "c"}, {"c", "a"}});
    auto r = recognize(c3);
    REQUIRE(r.ok());
    CHECK(r.expression->leaf_count() == 3);
    CHECK(r.expression->node_count() == 5);  // 3 leaves + series + parallel
    bool has_series = false, has_parallel = false;
    for (const ExprNode& n : r.expression->nodes()) {
        has_series |= n.kind == OpKind::Series;
        has_parallel |= n.kind == OpKind::Parallel;
    }
    CHECK(has_series);
    CHECK(has_parallel);
}

TEST_CASE("recognize rejects K4 immediately") {
    Graph k4 = build_graph(
        {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
    auto r = recognize(k4);
    CHECK(!r.ok());
    CHECK(r.residual_super_edges == 6);
}

TEST_CASE("recognize rejects grids and subdivided K4") {
    CHECK(!recognize(grid(4, 4)).ok());
    CHECK(!recognize(grid(3, 3)).ok());

    std::vector<std::pair<std::string, std::string>> es;
    const char* v[4] = {"a", "b", "c", "d"};
    int m = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            std::string mid = "m" + std::to_string(m++);
            es.emplace_back(v[i], mid);
            es.emplace_back(mid, v[j]);
        }
    }
    CHECK(!recognize(build_graph(es)).ok());
}

TEST_CASE("recognize input guards") {
    CHECK_THROWS_AS(recognize(Graph()), Error);
    Graph disconnected = build_graph({{"a", "b"}, {"c", "d"}});
    try {
        recognize(disconnected);
        FAIL("expected Disconnected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Disconnected);
    }
}

TEST_CASE("recognize is deterministic") {
    GenConfig cfg;
    cfg.seed = 7;
    cfg.target_leaves = 40;
    Graph g = flatten(gen_expression(cfg)).graph;
    auto r1 = recognize(g);
    auto r2 = recognize(g);
    REQUIRE(r1.ok());
    CHECK(render_expression(*r1.expression) == render_expression(*r2.expression));
}

TEST_CASE("recognize round-trips generated instances with equal optima") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.target_leaves = 1 + static_cast<int>(seed % 30);
        cfg.op_weights = {1.0, seed % 3 ? 1.0 : 0.0, seed % 2 ? 1.0 : 3.0};
        GspExpression e = gen_expression(cfg);
        auto flat = flatten(e);
        auto rec = recognize(flat.graph);
        REQUIRE(rec.ok());
        CHECK(same_graph(flatten(*rec.expression).graph, flat.graph));
        for (Variant v : {Variant::One2, Variant::Total12}) {
            auto a = solve(v, e);
            auto b = solve(v, *rec.expression);
            CHECK(a.feasible == b.feasible);
            if (a.feasible) CHECK(a.value == b.value);
        }
    }
}

namespace {

// K4 minor by brute force: four disjoint nonempty connected branch sets,
// pairwise joined by an edge. Only viable for tiny graphs.
bool has_k4_minor(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<char>> adj(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
    for (auto [u, v] : edges) adj[static_cast<size_t>(u)][static_cast<size_t>(v)] =
        adj[static_cast<size_t>(v)][static_cast<size_t>(u)] = 1;
    std::vector<int> color(static_cast<size_t>(n));
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= 5;  // class 0..3 or unused
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        bool nonempty[4] = {false, false, false, false};
        for (int i = 0; i < n; ++i) {
            color[static_cast<size_t>(i)] = static_cast<int>(c % 5);
            c /= 5;
            if (color[static_cast<size_t>(i)] < 4) nonempty[color[static_cast<size_t>(i)]] = true;
        }
        if (!(nonempty[0] && nonempty[1] && nonempty[2] && nonempty[3])) continue;
        bool ok = true;
        for (int cls = 0; cls < 4 && ok; ++cls) {
            std::vector<int> members;
            for (int i = 0; i < n; ++i) {
                if (color[static_cast<size_t>(i)] == cls) members.push_back(i);
            }
            std::vector<char> seen(static_cast<size_t>(n), 0);
            std::vector<int> stack = {members[0]};
            seen[static_cast<size_t>(members[0])] = 1;
            size_t reached = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w = 0; w < n; ++w) {
                    if (adj[static_cast<size_t>(v)][static_cast<size_t>(w)] &&
                        color[static_cast<size_t>(w)] == cls && !seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        ++reached;
                        stack.push_back(w);
                    }
                }
            }
            ok = reached == members.size();
        }
        for (int a = 0; a < 4 && ok; ++a) {
            for (int b = a + 1; b < 4 && ok; ++b) {
                bool touch = false;
                for (auto [u, v] : edges) {
                    int cu = color[static_cast<size_t>(u)], cv = color[static_cast<size_t>(v)];
                    if ((cu == a && cv == b) || (cu == b && cv == a)) {
                        touch = true;
                        break;
                    }
                }
                ok = touch;
            }
        }
        if (ok) return true;
    }
    return false;
}

} // namespace

TEST_CASE("recognize accepts exactly the K4-minor-free graphs up to n=5") {
    // Exhaustive over every connected labeled graph spanning n vertices:
    // the accepted class coincides with connected K4-minor-free graphs,
    // the textbook characterization of this graph family.
    long long checked = 0;
    for (int n = 2; n <= 5; ++n) {
        std::vector<std::pair<int, int>> all;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
        }
        int m = static_cast<int>(all.size());
        for (long long mask = 1; mask < (1LL << m); ++mask) {
            std::vector<std::pair<int, int>> edges;
            std::vector<std::pair<std::string, std::string>> labeled;
            for (int i = 0; i < m; ++i) {
                if (mask >> i & 1) {
                    edges.push_back(all[static_cast<size_t>(i)]);
                    labeled.emplace_back("v" + std::to_string(all[static_cast<size_t>(i)].first),
                                         "v" + std::to_string(all[static_cast<size_t>(i)].second));
                }
            }
            Graph g = build_graph(labeled);
            if (g.vertex_count() != n || !g.connected()) continue;
            ++checked;
            CHECK(recognize(g).ok() == !has_k4_minor(n, edges));
        }
    }
    CHECK(checked == 1 + 4 + 38 + 728);
}

TEST_CASE("recognize handles trees, thetas, fans and cacti") {
    // random trees: attach each new vertex to a pseudo-random earlier one
    for (int t = 0; t < 60; ++t) {
        std::vector<std::pair<std::string, std::string>> es;
        std::uint64_t x = static_cast<std::uint64_t>(t) * 2654435761u + 1;
        int n = 3 + t % 30;
        for (int i = 1; i < n; ++i) {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            es.emplace_back("t" + std::to_string(x % static_cast<std::uint64_t>(i)),
                            "t" + std::to_string(i));
        }
        Graph g = build_graph(es);
        auto r = recognize(g);
        REQUIRE(r.ok());
        if (g.vertex_count() <= 13) {
            auto a = solve(Variant::One2, *r.expression);
            CHECK(a.value == brute_solve(Variant::One2, g).value);
        }
    }

    for (int k = 2; k <= 5; ++k) {  // theta graphs
        std::vector<std::pair<std::string, std::string>> es;
        for (int i = 0; i < k; ++i) {
            es.emplace_back("u", "m" + std::to_string(i));
            es.emplace_back("m" + std::to_string(i), "v");
        }
        Graph g = build_graph(es);
        auto r = recognize(g);
        REQUIRE(r.ok());
        CHECK(solve(Variant::One2, *r.expression).value == brute_solve(Variant::One2, g).value);
    }

    {  // fan: path + apex
        std::vector<std::pair<std::string, std::string>> es;
        for (int i = 0; i < 4; ++i) es.emplace_back("hub", "f" + std::to_string(i));
        for (int i = 0; i + 1 < 4; ++i) {
            es.emplace_back("f" + std::to_string(i), "f" + std::to_string(i + 1));
        }
        Graph g = build_graph(es);
        auto r = recognize(g);
        REQUIRE(r.ok());
        CHECK(solve(Variant::One2, *r.expression).value == brute_solve(Variant::One2, g).value);
    }

    {  // cactus chain of triangles with pendants
        Graph g = build_graph({{"a", "b"},
                               {"b", "c"},
                               {"c", "a"},
                               {"c", "d"},
                               {"d", "e"},
                               {"e", "c"},
                               {"a", "p"},
                               {"d", "q"}});
        auto r = recognize(g);
        REQUIRE(r.ok());
        for (Variant v : {Variant::One2, Variant::Total12}) {
            auto got = solve(v, *r.expression);
            auto want = brute_solve(v, g);
            CHECK(got.feasible == want.feasible);
            if (got.feasible) CHECK(got.value == want.value);
        }
    }
}
