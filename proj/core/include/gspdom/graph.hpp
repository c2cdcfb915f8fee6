#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gspdom {

/// Dense vertex index. Ids are assigned by first appearance; the original
/// text label of each vertex is kept on the owning Graph for I/O.
using VertexId = std::int32_t;

/// Simple undirected graph: no self-loops, no parallel edges, sorted
/// duplicate-free adjacency lists. Immutable after construction.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from id edges. Self-loops are rejected, parallel
    /// edges are collapsed. `labels[v]` names vertex v.
    Graph(std::vector<std::string> labels,
          const std::vector<std::pair<VertexId, VertexId>>& edges);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return edge_count_; }

    const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[static_cast<size_t>(v)]; }
    int degree(VertexId v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
    bool has_edge(VertexId u, VertexId v) const;
    bool connected() const;

    const std::string& label(VertexId v) const { return labels_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<VertexId> find_label(std::string_view label) const;

    /// All edges as (u, v) with u < v, sorted.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<VertexId>> adj_;
    std::unordered_map<std::string, VertexId> by_label_;
    int edge_count_ = 0;
};

/// Membership bitset over the vertex range of one Graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe_size);

    void insert(VertexId v);
    void erase(VertexId v);
    bool contains(VertexId v) const;

    int size() const { return count_; }
    bool empty() const { return count_ == 0; }
    int universe_size() const { return universe_; }
    std::vector<VertexId> to_vector() const;

    bool operator==(const VertexSet& other) const = default;

private:
    std::vector<std::uint64_t> words_;
    int universe_ = 0;
    int count_ = 0;
};

/// Builds a graph from label pairs; vertex ids are assigned in
/// first-appearance order. Throws SelfLoop on u == v, collapses duplicates.
Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edges);

/// Edge-list text: one edge per line, two whitespace-separated labels,
/// '#'-lines and blank lines ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

struct SetViolation {
    VertexId vertex;
    int dominators;
};

/// First vertex violating the respective property, if any. A violation of
/// the plain domination check reports a vertex with zero dominators.
std::optional<SetViolation> find_domination_violation(const Graph& g, const VertexSet& s);
std::optional<SetViolation> find_12_violation(const Graph& g, const VertexSet& s);
std::optional<SetViolation> find_total_12_violation(const Graph& g, const VertexSet& s);

bool is_dominating_set(const Graph& g, const VertexSet& s);
bool is_12_set(const Graph& g, const VertexSet& s);
bool is_total_12_set(const Graph& g, const VertexSet& s);

} // namespace gspdom
