#include "gspdom/scaling.hpp"

#include "gspdom/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace gspdom {

namespace {

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // splitmix64 over (seed, size index, repeat) for independent instances
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

} // namespace

ScalingReport run_scaling(const ScalingConfig& cfg) {
    if (cfg.leaf_sizes.empty()) fail(ErrorKind::InvalidArgument, "no sizes given");
    if (!std::is_sorted(cfg.leaf_sizes.begin(), cfg.leaf_sizes.end())) {
        fail(ErrorKind::InvalidArgument, "sizes must be ascending");
    }
    if (cfg.repeats < 1) fail(ErrorKind::InvalidArgument, "repeats must be positive");

    ScalingReport report;
    for (size_t si = 0; si < cfg.leaf_sizes.size(); ++si) {
        ScalingRow row;
        row.leaves = cfg.leaf_sizes[si];
        for (int rep = 0; rep < cfg.repeats; ++rep) {
            GenConfig gen;
            gen.seed = mix_seed(cfg.seed, si, static_cast<std::uint64_t>(rep));
            gen.target_leaves = row.leaves;
            gen.op_weights = cfg.op_weights;
            auto g0 = std::chrono::steady_clock::now();
            GspExpression expr = gen_expression(gen);
            auto g1 = std::chrono::steady_clock::now();
            row.gen_ms += std::chrono::duration<double, std::milli>(g1 - g0).count();

            SolveResult result = solve(cfg.variant, expr);
            row.solve_ms.push_back(result.elapsed_ms);
            row.vertices = result.vertex_count;
            row.edges = result.edge_count;
        }
        row.gen_ms /= cfg.repeats;
        row.median_solve_ms = median(row.solve_ms);
        report.rows.push_back(std::move(row));
    }

    // least-squares slope over (log leaves, log median time)
    size_t n = report.rows.size();
    if (n >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const ScalingRow& row : report.rows) {
            double x = std::log(static_cast<double>(row.leaves));
            double y = std::log(std::max(row.median_solve_ms, 1e-9));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double dn = static_cast<double>(n);
        report.loglog_slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
        const ScalingRow& last = report.rows[n - 1];
        const ScalingRow& prev = report.rows[n - 2];
        report.top_doubling_ratio = last.median_solve_ms / std::max(prev.median_solve_ms, 1e-9);
    }
    return report;
}

} // namespace gspdom
