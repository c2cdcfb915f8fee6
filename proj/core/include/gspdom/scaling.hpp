#pragma once

#include "gspdom/dp.hpp"
#include "gspdom/generator.hpp"

#include <vector>

namespace gspdom {

struct ScalingConfig {
    Variant variant = Variant::One2;
    std::vector<int> leaf_sizes;
    std::uint64_t seed = 1;
    int repeats = 3;
    std::array<double, 3> op_weights = {1.0, 1.0, 1.0};
};

struct ScalingRow {
    int leaves = 0;
    int vertices = 0;
    int edges = 0;
    double gen_ms = 0.0;
    double median_solve_ms = 0.0;
    std::vector<double> solve_ms;
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    /// Least-squares slope of log(median solve time) against log(leaves).
    double loglog_slope = 0.0;
    /// Median time ratio between the two largest sizes (meaningful when the
    /// top size doubles the previous one).
    double top_doubling_ratio = 0.0;
};

/// Generates one instance per (size, repeat), times the solve phase
/// separately from generation, and fits the scaling exponent.
ScalingReport run_scaling(const ScalingConfig& cfg);

} // namespace gspdom
