#pragma once

#include "gspdom/expression.hpp"
#include "gspdom/graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gspdom {

enum class Variant : std::uint8_t { One2, Total12 };

const char* to_string(Variant v) noexcept;

/// Terminal annotation: `internal` dominators inside the p-graph,
/// `promised` dominators from outside it, `member` solution membership.
/// For One2 membership is encoded as internal == promised == 0 and the
/// member flag is derived; for Total12 it is independent.
struct DpState {
    std::uint8_t internal;
    std::uint8_t promised;
    std::uint8_t member;

    bool operator==(const DpState&) const = default;
};

/// Admissible states, sorted lexicographically by (internal, promised,
/// member). One2 has 6 states, Total12 has 10.
std::span<const DpState> states(Variant variant);
int state_count(Variant variant);
int state_index(Variant variant, DpState s);            // -1 if not admissible
int swapped_state(Variant variant, int index);           // internal <-> promised
bool zero_promise_state(Variant variant, int index);     // promised == 0
std::string state_name(Variant variant, int index);      // "(i,j)" / "(i,j,k)"

/// Per-parse-node table: minimum solution size of the node's p-graph for
/// every pair of terminal states, or infeasible. Internal entries carry a
/// back-pointer to the child state pairs chosen by the minimization.
class DpTable {
public:
    static constexpr std::int32_t kInfeasible = -1;
    static constexpr std::uint16_t kNoBack = 0xffff;

    explicit DpTable(Variant variant);

    Variant variant() const { return variant_; }
    int side() const { return side_; }

    bool feasible(int sx, int sy) const { return value_[index(sx, sy)] >= 0; }
    std::int32_t value(int sx, int sy) const { return value_[index(sx, sy)]; }
    std::uint16_t back(int sx, int sy) const { return back_[index(sx, sy)]; }

    void set(int sx, int sy, std::int32_t value, std::uint16_t back = kNoBack);

    int feasible_count() const;
    bool values_equal(const DpTable& other) const;

    std::int32_t* raw_values() { return value_.data(); }
    const std::int32_t* raw_values() const { return value_.data(); }
    std::uint16_t* raw_back() { return back_.data(); }

private:
    size_t index(int sx, int sy) const { return static_cast<size_t>(sx) * side_ + sy; }

    Variant variant_;
    int side_;
    std::vector<std::int32_t> value_;
    std::vector<std::uint16_t> back_;
};

/// Human-readable table rendering (one row per first-terminal state);
/// stable across runs, used by the golden-file tests.
std::string to_string(const DpTable& table);

/// Table of a single-edge p-graph.
DpTable leaf_table(Variant variant);

/// Composition tables. `left`/`right` follow the parse-tree labeling:
///   series:      left (x,z), right (z,y)  -> (x,y), z interior
///   parallel:    left (x,y), right (x,y)  -> (x,y)
///   generalized: left (x,y), right (y,z)  -> (x,y), z interior
DpTable merge_series(Variant variant, const DpTable& left, const DpTable& right);
DpTable merge_parallel(Variant variant, const DpTable& left, const DpTable& right);
DpTable merge_generalized(Variant variant, const DpTable& left, const DpTable& right);

struct RootChoice {
    int first_state = -1;
    int second_state = -1;
};

struct RootExtraction {
    bool feasible = false;
    std::int32_t value = DpTable::kInfeasible;
    RootChoice choice;
};

/// Minimum over root state pairs with zero external promise on both
/// terminals; first minimum in state order.
RootExtraction extract_root(Variant variant, const DpTable& root);

/// One table per expression node, aligned with node indices.
std::vector<DpTable> compute_tables(Variant variant, const GspExpression& expr);

/// Walks back-pointers from the root choice down to the leaves and collects
/// the chosen solution vertices.
VertexSet reconstruct_witness(Variant variant, const GspExpression& expr,
                              const std::vector<DpTable>& tables, RootChoice choice);

struct SolveResult {
    Variant variant = Variant::One2;
    bool feasible = false;
    std::int32_t value = DpTable::kInfeasible;
    VertexSet witness;       // empty when infeasible
    int node_count = 0;
    int leaf_count = 0;
    int vertex_count = 0;
    int edge_count = 0;
    double elapsed_ms = 0.0;
};

/// Bottom-up solve over the parse tree; the witness is validated against
/// the flattened graph before returning.
SolveResult solve(Variant variant, const GspExpression& expr);

} // namespace gspdom
