#include "gspdom/dp.hpp"

#include "gspdom/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

namespace gspdom {

const char* to_string(Variant v) noexcept {
    return v == Variant::One2 ? "one2" : "total12";
}

namespace {

// States sorted lexicographically by (internal, promised, member). For One2
// the (0,0) state means "terminal is in the solution"; its member flag is
// derived. For Total12 membership is the explicit k component.
constexpr std::array<DpState, 6> kOne2States = {{
    {0, 0, 1},
    {0, 1, 0},
    {0, 2, 0},
    {1, 0, 0},
    {1, 1, 0},
    {2, 0, 0},
}};

constexpr std::array<DpState, 10> kTotal12States = {{
    {0, 1, 0},
    {0, 1, 1},
    {0, 2, 0},
    {0, 2, 1},
    {1, 0, 0},
    {1, 0, 1},
    {1, 1, 0},
    {1, 1, 1},
    {2, 0, 0},
    {2, 0, 1},
}};

constexpr std::int32_t kInf = DpTable::kInfeasible;

std::uint16_t pack_back(int a, int b, int c, int d) {
    return static_cast<std::uint16_t>(a | (b << 4) | (c << 8) | (d << 12));
}

struct VariantInfo {
    Variant variant;
    std::span<const DpState> states;
    int n;
    std::array<int, 10> swap_index;
    std::array<bool, 10> member;
    std::vector<int> zero_promise;
    // For a shared terminal with target state t, the admissible child state
    // pairs: internal count splits across the two sides, each side promising
    // the other side's contribution on top of the target's own promise.
    std::array<std::vector<std::pair<int, int>>, 10> splits;
};

int find_state(std::span<const DpState> states, Variant variant, DpState want) {
    for (int idx = 0; idx < static_cast<int>(states.size()); ++idx) {
        const DpState& s = states[idx];
        if (s.internal != want.internal || s.promised != want.promised) continue;
        if (variant == Variant::Total12 && s.member != want.member) continue;
        return idx;
    }
    return -1;
}

VariantInfo make_info(Variant variant) {
    VariantInfo vi;
    vi.variant = variant;
    vi.states = variant == Variant::One2 ? std::span<const DpState>(kOne2States)
                                         : std::span<const DpState>(kTotal12States);
    vi.n = static_cast<int>(vi.states.size());
    for (int idx = 0; idx < vi.n; ++idx) {
        const DpState& s = vi.states[idx];
        vi.member[static_cast<size_t>(idx)] = s.member != 0;
        vi.swap_index[static_cast<size_t>(idx)] =
            find_state(vi.states, variant, DpState{s.promised, s.internal, s.member});
        if (s.promised == 0) vi.zero_promise.push_back(idx);
        auto& list = vi.splits[static_cast<size_t>(idx)];
        for (int il = 0; il <= s.internal; ++il) {
            int ir = s.internal - il;
            int l = find_state(vi.states, variant,
                               DpState{static_cast<std::uint8_t>(il),
                                       static_cast<std::uint8_t>(ir + s.promised), s.member});
            int r = find_state(vi.states, variant,
                               DpState{static_cast<std::uint8_t>(ir),
                                       static_cast<std::uint8_t>(il + s.promised), s.member});
            if (l >= 0 && r >= 0) list.emplace_back(l, r);
        }
    }
    return vi;
}

const VariantInfo& info(Variant variant) {
    static const VariantInfo one2 = make_info(Variant::One2);
    static const VariantInfo total = make_info(Variant::Total12);
    return variant == Variant::One2 ? one2 : total;
}

void fill_leaf(const VariantInfo& vi, std::int32_t* out) {
    const int n = vi.n;
    std::fill(out, out + n * n, kInf);
    auto set = [&](DpState a, DpState b, std::int32_t value) {
        int sa = find_state(vi.states, vi.variant, a);
        int sb = find_state(vi.states, vi.variant, b);
        out[sa * n + sb] = value;
    };
    if (vi.variant == Variant::One2) {
        set({0, 0, 1}, {0, 0, 1}, 2);
        set({0, 0, 1}, {1, 0, 0}, 1);
        set({0, 0, 1}, {1, 1, 0}, 1);
        set({1, 0, 0}, {0, 0, 1}, 1);
        set({1, 1, 0}, {0, 0, 1}, 1);
        for (std::uint8_t j : {1, 2}) {
            for (std::uint8_t j2 : {1, 2}) set({0, j, 0}, {0, j2, 0}, 0);
        }
    } else {
        // Enumerating the solution subsets of a single edge {x,y}:
        //   {x,y}: both members, each dominated once internally.
        //   {x}:   x member undominated inside, y dominated once by x.
        //   {}:    both outside, all domination promised.
        for (std::uint8_t j : {0, 1}) {
            for (std::uint8_t j2 : {0, 1}) set({1, j, 1}, {1, j2, 1}, 2);
        }
        for (std::uint8_t j : {1, 2}) {
            for (std::uint8_t j2 : {0, 1}) {
                set({0, j, 1}, {1, j2, 0}, 1);
                set({1, j2, 0}, {0, j, 1}, 1);
            }
        }
        for (std::uint8_t j : {1, 2}) {
            for (std::uint8_t j2 : {1, 2}) set({0, j, 0}, {0, j2, 0}, 0);
        }
    }
}

// Series: interior z is seen from both sides; the left state's promise must
// equal the right side's internal contribution and vice versa, so the right
// z-state is the left one with internal/promised swapped. Membership of z
// on both sides agrees by the swap. Overlap: z counted twice when a member.
void fill_series(const VariantInfo& vi, const std::int32_t* L, const std::int32_t* R,
                 std::int32_t* out, std::uint16_t* bp) {
    const int n = vi.n;
    for (int sx = 0; sx < n; ++sx) {
        for (int sy = 0; sy < n; ++sy) {
            std::int32_t best = std::numeric_limits<std::int32_t>::max();
            std::uint16_t best_bp = DpTable::kNoBack;
            for (int sz = 0; sz < n; ++sz) {
                std::int32_t a = L[sx * n + sz];
                if (a < 0) continue;
                int szr = vi.swap_index[static_cast<size_t>(sz)];
                std::int32_t b = R[szr * n + sy];
                if (b < 0) continue;
                std::int32_t v = a + b - (vi.member[static_cast<size_t>(sz)] ? 1 : 0);
                if (v < best) {
                    best = v;
                    best_bp = pack_back(sx, sz, szr, sy);
                }
            }
            out[sx * n + sy] = best_bp == DpTable::kNoBack ? kInf : best;
            bp[sx * n + sy] = best_bp;
        }
    }
}

// Parallel: both terminals shared; each target state splits independently
// into child states. Overlap: a member terminal is counted on both sides.
void fill_parallel(const VariantInfo& vi, const std::int32_t* L, const std::int32_t* R,
                   std::int32_t* out, std::uint16_t* bp) {
    const int n = vi.n;
    for (int sx = 0; sx < n; ++sx) {
        const auto& sx_splits = vi.splits[static_cast<size_t>(sx)];
        int overlap_x = vi.member[static_cast<size_t>(sx)] ? 1 : 0;
        for (int sy = 0; sy < n; ++sy) {
            const auto& sy_splits = vi.splits[static_cast<size_t>(sy)];
            std::int32_t overlap = overlap_x + (vi.member[static_cast<size_t>(sy)] ? 1 : 0);
            std::int32_t best = std::numeric_limits<std::int32_t>::max();
            std::uint16_t best_bp = DpTable::kNoBack;
            for (auto [lx, rx] : sx_splits) {
                for (auto [ly, ry] : sy_splits) {
                    std::int32_t a = L[lx * n + ly];
                    if (a < 0) continue;
                    std::int32_t b = R[rx * n + ry];
                    if (b < 0) continue;
                    std::int32_t v = a + b - overlap;
                    if (v < best) {
                        best = v;
                        best_bp = pack_back(lx, ly, rx, ry);
                    }
                }
            }
            out[sx * n + sy] = best_bp == DpTable::kNoBack ? kInf : best;
            bp[sx * n + sy] = best_bp;
        }
    }
}

// Generalized series: x passes through from the left child, y is shared and
// splits, z is interiorized. z's neighborhood is final here, so only right
// z-states with zero external promise can be completed.
void fill_generalized(const VariantInfo& vi, const std::int32_t* L, const std::int32_t* R,
                      std::int32_t* out, std::uint16_t* bp) {
    const int n = vi.n;
    for (int sx = 0; sx < n; ++sx) {
        for (int sy = 0; sy < n; ++sy) {
            const auto& sy_splits = vi.splits[static_cast<size_t>(sy)];
            std::int32_t overlap = vi.member[static_cast<size_t>(sy)] ? 1 : 0;
            std::int32_t best = std::numeric_limits<std::int32_t>::max();
            std::uint16_t best_bp = DpTable::kNoBack;
            for (auto [ly, ry] : sy_splits) {
                std::int32_t a = L[sx * n + ly];
                if (a < 0) continue;
                for (int sz : vi.zero_promise) {
                    std::int32_t b = R[ry * n + sz];
                    if (b < 0) continue;
                    std::int32_t v = a + b - overlap;
                    if (v < best) {
                        best = v;
                        best_bp = pack_back(sx, ly, ry, sz);
                    }
                }
            }
            out[sx * n + sy] = best_bp == DpTable::kNoBack ? kInf : best;
            bp[sx * n + sy] = best_bp;
        }
    }
}

} // namespace

std::span<const DpState> states(Variant variant) { return info(variant).states; }

int state_count(Variant variant) { return info(variant).n; }

int state_index(Variant variant, DpState s) {
    return find_state(info(variant).states, variant, s);
}

int swapped_state(Variant variant, int index) {
    return info(variant).swap_index[static_cast<size_t>(index)];
}

bool zero_promise_state(Variant variant, int index) {
    return info(variant).states[static_cast<size_t>(index)].promised == 0;
}

std::string state_name(Variant variant, int index) {
    const DpState& s = info(variant).states[static_cast<size_t>(index)];
    std::string out = "(" + std::to_string(s.internal) + "," + std::to_string(s.promised);
    if (variant == Variant::Total12) out += "," + std::to_string(s.member);
    return out + ")";
}

DpTable::DpTable(Variant variant)
    : variant_(variant),
      side_(state_count(variant)),
      value_(static_cast<size_t>(side_) * side_, kInfeasible),
      back_(static_cast<size_t>(side_) * side_, kNoBack) {}

void DpTable::set(int sx, int sy, std::int32_t value, std::uint16_t back) {
    if (sx < 0 || sy < 0 || sx >= side_ || sy >= side_) {
        fail(ErrorKind::InvalidArgument, "state index out of range");
    }
    value_[index(sx, sy)] = value;
    back_[index(sx, sy)] = back;
}

int DpTable::feasible_count() const {
    return static_cast<int>(std::count_if(value_.begin(), value_.end(),
                                          [](std::int32_t v) { return v >= 0; }));
}

bool DpTable::values_equal(const DpTable& other) const {
    return variant_ == other.variant_ && value_ == other.value_;
}

std::string to_string(const DpTable& table) {
    Variant variant = table.variant();
    const int n = table.side();
    const int width = variant == Variant::One2 ? 7 : 9;
    std::ostringstream out;
    out << std::setw(width) << "";
    for (int sy = 0; sy < n; ++sy) out << std::setw(width) << state_name(variant, sy);
    out << '\n';
    for (int sx = 0; sx < n; ++sx) {
        out << std::setw(width) << state_name(variant, sx);
        for (int sy = 0; sy < n; ++sy) {
            if (table.feasible(sx, sy)) {
                out << std::setw(width) << table.value(sx, sy);
            } else {
                out << std::setw(width) << "-";
            }
        }
        out << '\n';
    }
    return out.str();
}

DpTable leaf_table(Variant variant) {
    DpTable t(variant);
    fill_leaf(info(variant), t.raw_values());
    return t;
}

namespace {

void check_merge_args(Variant variant, const DpTable& left, const DpTable& right) {
    if (left.variant() != variant || right.variant() != variant) {
        fail(ErrorKind::InvalidArgument, "merge: table variant mismatch");
    }
}

} // namespace

DpTable merge_series(Variant variant, const DpTable& left, const DpTable& right) {
    check_merge_args(variant, left, right);
    DpTable t(variant);
    fill_series(info(variant), left.raw_values(), right.raw_values(), t.raw_values(),
                t.raw_back());
    return t;
}

DpTable merge_parallel(Variant variant, const DpTable& left, const DpTable& right) {
    check_merge_args(variant, left, right);
    DpTable t(variant);
    fill_parallel(info(variant), left.raw_values(), right.raw_values(), t.raw_values(),
                  t.raw_back());
    return t;
}

DpTable merge_generalized(Variant variant, const DpTable& left, const DpTable& right) {
    check_merge_args(variant, left, right);
    DpTable t(variant);
    fill_generalized(info(variant), left.raw_values(), right.raw_values(), t.raw_values(),
                     t.raw_back());
    return t;
}

RootExtraction extract_root(Variant variant, const DpTable& root) {
    const VariantInfo& vi = info(variant);
    RootExtraction out;
    std::int32_t best = std::numeric_limits<std::int32_t>::max();
    for (int sx : vi.zero_promise) {
        for (int sy : vi.zero_promise) {
            if (!root.feasible(sx, sy)) continue;
            std::int32_t v = root.value(sx, sy);
            if (v < best) {
                best = v;
                out.choice = RootChoice{sx, sy};
            }
        }
    }
    if (out.choice.first_state >= 0) {
        out.feasible = true;
        out.value = best;
    }
    return out;
}

std::vector<DpTable> compute_tables(Variant variant, const GspExpression& expr) {
    std::vector<DpTable> tables;
    tables.reserve(static_cast<size_t>(expr.node_count()));
    const DpTable leaf = leaf_table(variant);
    for (std::int32_t idx = 0; idx < expr.node_count(); ++idx) {
        const ExprNode& node = expr.node(idx);
        switch (node.kind) {
        case OpKind::Primitive:
            tables.push_back(leaf);
            break;
        case OpKind::Series:
            tables.push_back(merge_series(variant, tables[static_cast<size_t>(node.left)],
                                          tables[static_cast<size_t>(node.right)]));
            break;
        case OpKind::Parallel:
            tables.push_back(merge_parallel(variant, tables[static_cast<size_t>(node.left)],
                                            tables[static_cast<size_t>(node.right)]));
            break;
        case OpKind::GenSeries:
            tables.push_back(merge_generalized(variant, tables[static_cast<size_t>(node.left)],
                                               tables[static_cast<size_t>(node.right)]));
            break;
        }
    }
    return tables;
}

namespace {

// Shared witness walk; `entry` yields (value, back) of a node's table cell.
VertexSet walk_witness(Variant variant, const GspExpression& expr,
                       const std::function<std::pair<std::int32_t, std::uint16_t>(
                           std::int32_t, int, int)>& entry,
                       RootChoice choice) {
    const VariantInfo& vi = info(variant);
    VertexSet witness(expr.vertex_count());
    struct Item {
        std::int32_t node;
        int sx, sy;
    };
    std::vector<Item> stack = {{expr.root(), choice.first_state, choice.second_state}};
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        auto [value, back] = entry(item.node, item.sx, item.sy);
        if (value < 0) {
            fail(ErrorKind::InternalError, "witness walk reached an infeasible entry");
        }
        const ExprNode& node = expr.node(item.node);
        if (node.kind == OpKind::Primitive) {
            if (vi.member[static_cast<size_t>(item.sx)]) witness.insert(node.terminals.first);
            if (vi.member[static_cast<size_t>(item.sy)]) witness.insert(node.terminals.second);
            continue;
        }
        if (back == DpTable::kNoBack) {
            fail(ErrorKind::InternalError, "missing back-pointer on internal node");
        }
        stack.push_back({node.left, back & 0xf, (back >> 4) & 0xf});
        stack.push_back({node.right, (back >> 8) & 0xf, (back >> 12) & 0xf});
    }
    return witness;
}

} // namespace

VertexSet reconstruct_witness(Variant variant, const GspExpression& expr,
                              const std::vector<DpTable>& tables, RootChoice choice) {
    if (static_cast<int>(tables.size()) != expr.node_count()) {
        fail(ErrorKind::InvalidArgument, "tables not aligned with expression nodes");
    }
    return walk_witness(variant, expr,
                        [&](std::int32_t node, int sx, int sy) {
                            const DpTable& t = tables[static_cast<size_t>(node)];
                            return std::make_pair(t.value(sx, sy), t.back(sx, sy));
                        },
                        choice);
}

SolveResult solve(Variant variant, const GspExpression& expr) {
    auto start = std::chrono::steady_clock::now();
    const VariantInfo& vi = info(variant);
    const size_t stride = static_cast<size_t>(vi.n) * vi.n;
    const size_t nodes = static_cast<size_t>(expr.node_count());

    std::vector<std::int32_t> values(nodes * stride);
    std::vector<std::uint16_t> backs(nodes * stride, DpTable::kNoBack);

    std::vector<std::int32_t> leaf_proto(stride);
    fill_leaf(vi, leaf_proto.data());

    // Nodes are stored children-before-parent, so one forward scan is a
    // bottom-up traversal of the parse tree.
    for (size_t idx = 0; idx < nodes; ++idx) {
        const ExprNode& node = expr.node(static_cast<std::int32_t>(idx));
        std::int32_t* out = values.data() + idx * stride;
        std::uint16_t* bp = backs.data() + idx * stride;
        const std::int32_t* L = values.data() + static_cast<size_t>(node.left) * stride;
        const std::int32_t* R = values.data() + static_cast<size_t>(node.right) * stride;
        switch (node.kind) {
        case OpKind::Primitive:
            std::memcpy(out, leaf_proto.data(), stride * sizeof(std::int32_t));
            break;
        case OpKind::Series: fill_series(vi, L, R, out, bp); break;
        case OpKind::Parallel: fill_parallel(vi, L, R, out, bp); break;
        case OpKind::GenSeries: fill_generalized(vi, L, R, out, bp); break;
        }
    }

    DpTable root_table(variant);
    std::memcpy(root_table.raw_values(), values.data() + (nodes - 1) * stride,
                stride * sizeof(std::int32_t));
    RootExtraction extraction = extract_root(variant, root_table);

    SolveResult result;
    result.variant = variant;
    result.node_count = expr.node_count();
    result.leaf_count = expr.leaf_count();
    result.vertex_count = expr.vertex_count();
    result.edge_count = expr.leaf_count();

    if (!extraction.feasible) {
        if (variant == Variant::One2) {
            // The whole vertex set is always a [1,2]-set, so a One2 solve
            // can never come out infeasible.
            fail(ErrorKind::InternalError, "one2 root table has no feasible entry");
        }
        result.feasible = false;
        result.witness = VertexSet(expr.vertex_count());
    } else {
        result.feasible = true;
        result.value = extraction.value;
        result.witness = walk_witness(
            variant, expr,
            [&](std::int32_t node, int sx, int sy) {
                size_t at = static_cast<size_t>(node) * stride +
                            static_cast<size_t>(sx) * vi.n + static_cast<size_t>(sy);
                return std::make_pair(values[at], backs[at]);
            },
            extraction.choice);
        if (result.witness.size() != result.value) {
            fail(ErrorKind::InternalError, "witness size disagrees with table value");
        }
        FlattenResult flat = flatten(expr);
        auto violation = variant == Variant::One2
                             ? find_12_violation(flat.graph, result.witness)
                             : find_total_12_violation(flat.graph, result.witness);
        if (violation) {
            fail(ErrorKind::ValidationFailure,
                 "reconstructed witness violates the set property at '" +
                     flat.graph.label(violation->vertex) + "'");
        }
    }

    auto end = std::chrono::steady_clock::now();
    result.elapsed_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return result;
}

} // namespace gspdom
