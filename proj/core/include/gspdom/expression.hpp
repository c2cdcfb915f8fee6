#pragma once

#include "gspdom/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gspdom {

enum class OpKind : std::uint8_t { Primitive, Series, Parallel, GenSeries };

const char* to_string(OpKind kind) noexcept;

struct TerminalPair {
    VertexId first = -1;
    VertexId second = -1;

    bool operator==(const TerminalPair&) const = default;
};

struct ExprNode {
    OpKind kind = OpKind::Primitive;
    std::int32_t left = -1;   // -1 for leaves
    std::int32_t right = -1;
    TerminalPair terminals;   // for a leaf, the edge endpoints
};

/// Binary composition tree over leaf edges; doubles as the parse tree the
/// solver traverses. Nodes are stored children-before-parent with the root
/// last, so a forward scan is a post-order traversal.
///
/// Terminal labeling invariants:
///   Series   (x,y) <- children (x,z), (z,y)   z becomes interior
///   Parallel (x,y) <- children (x,y), (x,y)
///   GenSeries(x,y) <- children (x,y), (y,z)   z becomes interior
class GspExpression {
public:
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const { return leaf_count_; }
    std::int32_t root() const { return static_cast<std::int32_t>(nodes_.size()) - 1; }
    const ExprNode& node(std::int32_t idx) const { return nodes_[static_cast<size_t>(idx)]; }
    const std::vector<ExprNode>& nodes() const { return nodes_; }
    TerminalPair terminals() const { return nodes_.back().terminals; }

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    const std::string& label(VertexId v) const { return labels_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool structurally_equal(const GspExpression& other) const;

private:
    friend class ExprBuilder;
    std::vector<ExprNode> nodes_;
    std::vector<std::string> labels_;
    int leaf_count_ = 0;
};

/// Incremental expression builder. Vertices are interned by name; the
/// composition rules are checked per node and the naming discipline
/// (identified vertices share one name, distinct vertices have distinct
/// names) is verified in finish().
class ExprBuilder {
public:
    VertexId intern(std::string_view name);
    const std::string& name_of(VertexId v) const { return labels_[static_cast<size_t>(v)]; }

    std::int32_t leaf(VertexId u, VertexId v);
    std::int32_t series(std::int32_t left, std::int32_t right);
    std::int32_t parallel(std::int32_t left, std::int32_t right);
    std::int32_t gen_series(std::int32_t left, std::int32_t right);
    std::int32_t compose(OpKind kind, std::int32_t left, std::int32_t right);

    TerminalPair terminals(std::int32_t node) const { return nodes_[static_cast<size_t>(node)].terminals; }
    int node_count() const { return static_cast<int>(nodes_.size()); }

    /// Finalizes the tree rooted at `root`. Every built node must be
    /// reachable from it exactly once.
    GspExpression finish(std::int32_t root);

private:
    std::int32_t add_node(ExprNode node);
    void check_child(std::int32_t idx) const;

    std::vector<ExprNode> nodes_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> ids_;
    std::vector<std::int32_t> leaf_uses_;   // per vertex: leaf endpoint occurrences
    std::vector<std::int32_t> share_uses_;  // per vertex: identifications at internal nodes
    std::unordered_set<std::uint64_t> leaf_edges_;
    std::vector<char> consumed_;            // node already used as a child
    int leaf_count_ = 0;
};

/// Grammar:  expr := "e(" id "," id ")" | "s(" expr "," expr ")"
///                 | "p(" expr "," expr ")" | "g(" expr "," expr ")"
/// Identifiers are [A-Za-z0-9_.-]+; whitespace between tokens is free.
GspExpression parse_expression(std::string_view text);
GspExpression parse_expression_file(const std::string& path);

/// Inverse of parse_expression up to whitespace: parse(render(e)) is
/// structurally equal to e.
std::string render_expression(const GspExpression& expr);

struct FlattenResult {
    Graph graph;
    TerminalPair terminals;
};

/// The concrete graph an expression denotes: one edge per leaf, vertex ids
/// and labels shared with the expression.
FlattenResult flatten(const GspExpression& expr);

/// Flattening of the subtree rooted at `node` (the node's p-graph). The
/// result has its own dense vertex ids; labels come from the expression.
FlattenResult flatten_subtree(const GspExpression& expr, std::int32_t node);

struct TerminalGraph {
    Graph graph;
    TerminalPair terminals;
};

/// Graph-level composition of two terminal graphs under the shared-name
/// convention: vertices identified by the rule must carry the same label
/// and no other labels may coincide.
TerminalGraph compose(OpKind kind, const TerminalGraph& g1, const TerminalGraph& g2);

} // namespace gspdom
