#pragma once

#include "gspdom/expression.hpp"
#include "gspdom/graph.hpp"

#include <optional>

namespace gspdom {

struct RecognizeResult {
    /// Engaged on success; flattening the expression reproduces the input
    /// graph on the same vertex labels.
    std::optional<GspExpression> expression;
    /// Number of super-edges left when the reduction got stuck (>= 2), or
    /// 1 on success.
    int residual_super_edges = 0;

    bool ok() const { return expression.has_value(); }
};

/// Reduction-based parse-tree construction. Maintains every current
/// super-edge as a composition tree and repeatedly applies, in a
/// deterministic worklist order:
///   parallel reduction: two super-edges on the same endpoint pair,
///   series reduction:   a degree-2 vertex with two distinct neighbors,
///   pendant reduction:  a degree-1 vertex folded into a host super-edge
///                       at its neighbor.
/// Succeeds when a single super-edge remains. Throws EmptyGraph on
/// edge-less input and Disconnected on disconnected input.
RecognizeResult recognize(const Graph& g);

} // namespace gspdom
