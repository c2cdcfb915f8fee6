#include "gspdom/oracle.hpp"

#include "gspdom/errors.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace gspdom {

namespace {

std::vector<std::uint32_t> neighbor_masks(const Graph& g) {
    std::vector<std::uint32_t> masks(static_cast<size_t>(g.vertex_count()), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (VertexId w : g.neighbors(v)) {
            masks[static_cast<size_t>(v)] |= std::uint32_t{1} << w;
        }
    }
    return masks;
}

bool subset_ok(Variant variant, const std::vector<std::uint32_t>& masks, std::uint32_t subset) {
    for (size_t v = 0; v < masks.size(); ++v) {
        bool in = (subset >> v) & 1;
        if (variant == Variant::One2 && in) continue;
        int d = std::popcount(masks[v] & subset);
        if (d < 1 || d > 2) return false;
    }
    return true;
}

VertexSet to_set(std::uint32_t subset, int n) {
    VertexSet s(n);
    for (int v = 0; v < n; ++v) {
        if ((subset >> v) & 1) s.insert(v);
    }
    return s;
}

} // namespace

BruteResult brute_solve(Variant variant, const Graph& g) {
    const int n = g.vertex_count();
    if (n > 25) fail(ErrorKind::TooLarge, "brute_solve is limited to 25 vertices");
    auto masks = neighbor_masks(g);

    // k-subsets in lexicographic order of their sorted id sequence, so the
    // first hit at the optimal cardinality is the lexicographically least
    // witness.
    std::vector<int> pick;
    for (int k = 0; k <= n; ++k) {
        pick.resize(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
        for (;;) {
            std::uint32_t subset = 0;
            for (int v : pick) subset |= std::uint32_t{1} << v;
            if (subset_ok(variant, masks, subset)) {
                return BruteResult{true, k, to_set(subset, n)};
            }
            // next k-combination
            int i = k - 1;
            while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j) {
                pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
            }
        }
    }
    BruteResult out;
    out.witness = VertexSet(n);
    return out;
}

DpTable brute_node_table(Variant variant, const Graph& pgraph, TerminalPair terminals) {
    const int n = pgraph.vertex_count();
    if (n > 12) fail(ErrorKind::TooLarge, "brute_node_table is limited to 12 vertices");
    if (terminals.first == terminals.second || terminals.first < 0 || terminals.second < 0 ||
        terminals.first >= n || terminals.second >= n) {
        fail(ErrorKind::InvalidArgument, "invalid terminal pair");
    }
    auto masks = neighbor_masks(pgraph);
    DpTable table(variant);
    const int side = table.side();
    auto span = states(variant);

    for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << n); ++subset) {
        // Interior vertices are fully constrained inside the p-graph;
        // terminals may defer part of their domination to the outside.
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            if (v == terminals.first || v == terminals.second) continue;
            bool in = (subset >> v) & 1;
            if (variant == Variant::One2 && in) continue;
            int d = std::popcount(masks[static_cast<size_t>(v)] & subset);
            if (d < 1 || d > 2) ok = false;
        }
        if (!ok) continue;
        int size = std::popcount(subset);

        auto compatible = [&](VertexId t, int state) {
            const DpState& s = span[static_cast<size_t>(state)];
            bool in = (subset >> t) & 1;
            if ((s.member != 0) != in) return false;
            if (variant == Variant::One2 && in) return true;
            int d = std::popcount(masks[static_cast<size_t>(t)] & subset);
            return d == s.internal;
        };
        for (int sx = 0; sx < side; ++sx) {
            if (!compatible(terminals.first, sx)) continue;
            for (int sy = 0; sy < side; ++sy) {
                if (!compatible(terminals.second, sy)) continue;
                if (!table.feasible(sx, sy) || size < table.value(sx, sy)) {
                    table.set(sx, sy, size);
                }
            }
        }
    }
    return table;
}

} // namespace gspdom
