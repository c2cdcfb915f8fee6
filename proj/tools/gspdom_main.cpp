#include "gspdom/dp.hpp"
#include "gspdom/errors.hpp"
#include "gspdom/generator.hpp"
#include "gspdom/oracle.hpp"
#include "gspdom/recognize.hpp"
#include "gspdom/scaling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using gspdom::Variant;
using json = nlohmann::json;

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitNotGsp = 2;
constexpr int kExitCheckFailed = 3;

Variant parse_variant(const std::string& name) {
    if (name == "one2") return Variant::One2;
    if (name == "total12") return Variant::Total12;
    gspdom::fail(gspdom::ErrorKind::InvalidArgument, "unknown variant '" + name + "'");
}

gspdom::Graph load_graph(const std::string& path) {
    if (path == "-") return gspdom::read_edge_list(std::cin);
    return gspdom::read_edge_list_file(path);
}

gspdom::GspExpression load_expression(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return gspdom::parse_expression(buf.str());
    }
    return gspdom::parse_expression_file(path);
}

struct Report {
    Variant variant = Variant::One2;
    int n = 0;
    int m = 0;
    bool feasible = false;
    int value = -1;
    std::vector<std::string> witness;
    bool with_witness = false;
    double elapsed_ms = 0.0;
    int parse_tree_nodes = 0;
};

void print_report(const Report& r, bool as_json) {
    if (as_json) {
        json out{
            {"variant", gspdom::to_string(r.variant)},
            {"n", r.n},
            {"m", r.m},
            {"value", r.feasible ? json(r.value) : json(nullptr)},
            {"feasible", r.feasible},
            {"elapsed_ms", r.elapsed_ms},
            {"parse_tree_nodes", r.parse_tree_nodes},
        };
        if (r.with_witness && r.feasible) out["witness"] = r.witness;
        std::cout << out.dump() << '\n';
        return;
    }
    std::cout << "variant: " << gspdom::to_string(r.variant) << '\n';
    std::cout << "n: " << r.n << "  m: " << r.m << '\n';
    if (r.feasible) {
        std::cout << "value: " << r.value << '\n';
    } else {
        std::cout << "value: infeasible\n";
    }
    if (r.with_witness && r.feasible) {
        std::cout << "witness:";
        for (const std::string& label : r.witness) std::cout << ' ' << label;
        std::cout << '\n';
    }
    std::cout << "parse_tree_nodes: " << r.parse_tree_nodes << '\n';
    std::cout << "elapsed_ms: " << r.elapsed_ms << '\n';
}

std::vector<std::string> witness_labels(const gspdom::Graph& g, const gspdom::VertexSet& s) {
    std::vector<std::string> out;
    for (gspdom::VertexId v : s.to_vector()) out.push_back(g.label(v));
    return out;
}

int cmd_solve(const std::string& input, const std::string& variant_name,
              const std::string& format, bool as_json, bool with_witness) {
    Variant variant = parse_variant(variant_name);
    gspdom::GspExpression expr;
    if (format == "edges") {
        gspdom::Graph g = load_graph(input);
        gspdom::RecognizeResult rec = gspdom::recognize(g);
        if (!rec.ok()) {
            std::cerr << "not a generalized series-parallel graph (stuck with "
                      << rec.residual_super_edges << " super-edges)\n";
            return kExitNotGsp;
        }
        expr = std::move(*rec.expression);
    } else if (format == "expr") {
        expr = load_expression(input);
    } else {
        gspdom::fail(gspdom::ErrorKind::InvalidArgument, "format must be expr or edges");
    }

    gspdom::SolveResult result = gspdom::solve(variant, expr);
    Report report;
    report.variant = variant;
    report.n = result.vertex_count;
    report.m = result.edge_count;
    report.feasible = result.feasible;
    report.value = result.value;
    report.elapsed_ms = result.elapsed_ms;
    report.parse_tree_nodes = result.node_count;
    report.with_witness = with_witness;
    if (with_witness && result.feasible) {
        gspdom::FlattenResult flat = gspdom::flatten(expr);
        report.witness = witness_labels(flat.graph, result.witness);
    }
    print_report(report, as_json);
    return kExitSolved;
}

int cmd_check(const std::string& input, const std::string& set_arg,
              const std::string& variant_name, const std::string& format) {
    Variant variant = parse_variant(variant_name);
    gspdom::Graph g;
    if (format == "edges") {
        g = load_graph(input);
    } else {
        g = gspdom::flatten(load_expression(input)).graph;
    }
    gspdom::VertexSet set(g.vertex_count());
    std::istringstream labels(set_arg);
    std::string label;
    while (std::getline(labels, label, ',')) {
        size_t a = label.find_first_not_of(" \t");
        size_t b = label.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        label = label.substr(a, b - a + 1);
        auto v = g.find_label(label);
        if (!v) {
            std::cerr << "unknown vertex label '" << label << "'\n";
            return kExitError;
        }
        set.insert(*v);
    }
    auto violation = variant == Variant::One2 ? gspdom::find_12_violation(g, set)
                                              : gspdom::find_total_12_violation(g, set);
    if (violation) {
        std::cout << "violated at '" << g.label(violation->vertex)
                  << "': " << violation->dominators << " dominators\n";
        return kExitCheckFailed;
    }
    std::cout << "ok\n";
    return kExitSolved;
}

int cmd_gen(std::uint64_t seed, int leaves, const std::vector<double>& weights,
            const std::string& prefix) {
    gspdom::GenConfig cfg;
    cfg.seed = seed;
    cfg.target_leaves = leaves;
    if (!weights.empty()) {
        if (weights.size() != 3) {
            gspdom::fail(gspdom::ErrorKind::InvalidArgument,
                         "--weights takes three values: series,parallel,genseries");
        }
        cfg.op_weights = {weights[0], weights[1], weights[2]};
    }
    cfg.label_prefix = prefix;
    std::cout << gspdom::render_expression(gspdom::gen_expression(cfg)) << '\n';
    return kExitSolved;
}

int cmd_oracle(const std::string& input, const std::string& variant_name,
               const std::string& format, bool as_json, bool with_witness) {
    Variant variant = parse_variant(variant_name);
    gspdom::Graph g;
    if (format == "edges") {
        g = load_graph(input);
    } else {
        g = gspdom::flatten(load_expression(input)).graph;
    }
    auto start = std::chrono::steady_clock::now();
    gspdom::BruteResult result = gspdom::brute_solve(variant, g);
    auto end = std::chrono::steady_clock::now();

    Report report;
    report.variant = variant;
    report.n = g.vertex_count();
    report.m = g.edge_count();
    report.feasible = result.feasible;
    report.value = result.value;
    report.elapsed_ms = std::chrono::duration<double, std::milli>(end - start).count();
    report.parse_tree_nodes = 0;
    report.with_witness = with_witness;
    if (with_witness && result.feasible) report.witness = witness_labels(g, result.witness);
    print_report(report, as_json);
    return kExitSolved;
}

int cmd_bench(const std::string& variant_name, const std::vector<int>& sizes,
              std::uint64_t seed, int repeats, const std::vector<double>& weights) {
    gspdom::ScalingConfig cfg;
    cfg.variant = parse_variant(variant_name);
    cfg.leaf_sizes = sizes;
    cfg.seed = seed;
    cfg.repeats = repeats;
    if (!weights.empty()) {
        if (weights.size() != 3) {
            gspdom::fail(gspdom::ErrorKind::InvalidArgument,
                         "--weights takes three values: series,parallel,genseries");
        }
        cfg.op_weights = {weights[0], weights[1], weights[2]};
    }
    gspdom::ScalingReport report = gspdom::run_scaling(cfg);
    for (const gspdom::ScalingRow& row : report.rows) {
        std::cout << "leaves=" << row.leaves << " vertices=" << row.vertices
                  << " edges=" << row.edges << " gen_ms=" << row.gen_ms
                  << " median_solve_ms=" << row.median_solve_ms << " runs=";
        for (size_t i = 0; i < row.solve_ms.size(); ++i) {
            std::cout << (i ? "," : "") << row.solve_ms[i];
        }
        std::cout << '\n';
    }
    std::cout << "loglog_slope=" << report.loglog_slope << '\n';
    std::cout << "top_doubling_ratio=" << report.top_doubling_ratio << '\n';
    return kExitSolved;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum [1,2]- and total [1,2]-domination on generalized "
                 "series-parallel graphs"};
    app.require_subcommand(1);

    std::string input, variant = "one2", format = "expr", set_arg, prefix = "v";
    bool as_json = false, with_witness = false;
    std::uint64_t seed = 1;
    int leaves = 1, repeats = 3;
    std::vector<double> weights;
    std::vector<int> sizes;

    auto* solve = app.add_subcommand("solve", "Solve an instance exactly");
    solve->add_option("input", input, "expression or edge-list file, '-' for stdin")->required();
    solve->add_option("--variant", variant, "one2 | total12");
    solve->add_option("--format", format, "expr | edges (edges runs recognition first)");
    solve->add_flag("--json", as_json, "machine-readable report");
    solve->add_flag("--witness", with_witness, "include an optimal set");

    auto* check = app.add_subcommand("check", "Validate a vertex set against a variant");
    check->add_option("input", input, "graph file, '-' for stdin")->required();
    check->add_option("--set", set_arg, "comma-separated vertex labels")->required();
    check->add_option("--variant", variant, "one2 | total12");
    std::string check_format = "edges";
    check->add_option("--format", check_format, "edges | expr");

    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    gen->add_option("--seed", seed, "PRNG seed");
    gen->add_option("--leaves", leaves, "number of leaf edges")->required();
    gen->add_option("--weights", weights, "op weights series,parallel,genseries")
        ->delimiter(',');
    gen->add_option("--prefix", prefix, "vertex label prefix");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive reference solver (n <= 25)");
    std::string oracle_format = "edges";
    oracle->add_option("input", input, "graph file, '-' for stdin")->required();
    oracle->add_option("--variant", variant, "one2 | total12");
    oracle->add_option("--format", oracle_format, "edges | expr");
    oracle->add_flag("--json", as_json, "machine-readable report");
    oracle->add_flag("--witness", with_witness, "include the optimal set");

    auto* bench = app.add_subcommand("bench", "Scaling benchmark over generated instances");
    bench->add_option("--variant", variant, "one2 | total12");
    bench->add_option("--sizes", sizes, "ascending leaf counts")->required()->delimiter(',');
    bench->add_option("--seed", seed, "base seed");
    bench->add_option("--repeats", repeats, "instances per size");
    bench->add_option("--weights", weights, "op weights series,parallel,genseries")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(input, variant, format, as_json, with_witness);
        if (check->parsed()) return cmd_check(input, set_arg, variant, check_format);
        if (gen->parsed()) return cmd_gen(seed, leaves, weights, prefix);
        if (oracle->parsed()) {
            return cmd_oracle(input, variant, oracle_format, as_json, with_witness);
        }
        if (bench->parsed()) return cmd_bench(variant, sizes, seed, repeats, weights);
    } catch (const gspdom::Error& e) {
        std::cerr << e.what() << '\n';
        if (e.kind() == gspdom::ErrorKind::Disconnected) return kExitNotGsp;
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
