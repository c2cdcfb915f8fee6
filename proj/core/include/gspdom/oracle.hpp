#pragma once

#include "gspdom/dp.hpp"
#include "gspdom/graph.hpp"

namespace gspdom {

struct BruteResult {
    bool feasible = false;
    int value = -1;
    VertexSet witness;
};

/// Exhaustive minimum [1,2]- / total [1,2]-set by subset enumeration in
/// ascending cardinality; the witness is the lexicographically least
/// optimum. Guarded to 25 vertices.
BruteResult brute_solve(Variant variant, const Graph& g);

/// Ground-truth state table of a two-terminal p-graph, evaluated directly
/// from the table's semantic contract over all vertex subsets. No
/// back-pointers. Guarded to 12 vertices.
DpTable brute_node_table(Variant variant, const Graph& pgraph, TerminalPair terminals);

} // namespace gspdom
