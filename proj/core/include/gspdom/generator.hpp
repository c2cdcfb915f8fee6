#pragma once

#include "gspdom/expression.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace gspdom {

struct GenConfig {
    std::uint64_t seed = 0;
    int target_leaves = 1;
    /// Relative weights for choosing Series / Parallel / GenSeries at
    /// internal nodes. Non-negative, not all zero.
    std::array<double, 3> op_weights = {1.0, 1.0, 1.0};
    std::string label_prefix = "v";
};

/// Seeded random expression with exactly target_leaves leaves. The PRNG is
/// mt19937_64 with in-house bounded draws, so the stream is identical
/// across platforms for a given config. Flattening never produces a
/// multi-edge: a parallel node routes its larger leaf budget into a
/// series-topped branch, which keeps the two branches edge-disjoint.
GspExpression gen_expression(const GenConfig& cfg);

} // namespace gspdom
