#include "gspdom/generator.hpp"

#include "gspdom/errors.hpp"

#include <random>
#include <vector>

namespace gspdom {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Multiply-shift bounded draw; bias is irrelevant here and the stream
    // stays platform-independent (std::uniform_int_distribution does not).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    int weighted(const std::array<double, 3>& weights) {
        double total = weights[0] + weights[1] + weights[2];
        double x = static_cast<double>(next() >> 11) * 0x1.0p-53 * total;
        if (x < weights[0]) return 0;
        if (x < weights[0] + weights[1]) return 1;
        return 2;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace

GspExpression gen_expression(const GenConfig& cfg) {
    if (cfg.target_leaves < 1) {
        fail(ErrorKind::InvalidArgument, "target_leaves must be positive");
    }
    if (cfg.op_weights[0] < 0 || cfg.op_weights[1] < 0 || cfg.op_weights[2] < 0 ||
        cfg.op_weights[0] + cfg.op_weights[1] + cfg.op_weights[2] <= 0) {
        fail(ErrorKind::InvalidArgument, "op weights must be non-negative, not all zero");
    }

    Rng rng(cfg.seed);
    ExprBuilder builder;
    std::uint64_t next_name = 0;
    auto fresh = [&] {
        return builder.intern(cfg.label_prefix + std::to_string(next_name++));
    };

    // Top-down leaf-budget splitting with an explicit stack. Each task
    // builds a subexpression with the given terminals and leaf budget;
    // tasks are expanded in a deterministic order.
    struct Task {
        VertexId first;
        VertexId second;
        int budget;
        bool force_series;  // branch of a parallel node that must stay
                            // edge-disjoint from its sibling's (first,second) leaf
        OpKind op = OpKind::Primitive;  // decided on first visit
        std::int32_t left_child = -1;   // filled as children complete
        std::int32_t right_child = -1;
        VertexId mid = -1;
    };

    std::vector<Task> stack;
    VertexId s = fresh();
    VertexId t = fresh();
    stack.push_back(Task{s, t, cfg.target_leaves, false});
    std::int32_t completed = -1;

    while (!stack.empty()) {
        size_t at = stack.size() - 1;
        if (stack[at].budget == 1) {
            completed = builder.leaf(stack[at].first, stack[at].second);
            stack.pop_back();
        } else if (stack[at].op == OpKind::Primitive) {
            // first visit: pick the op and the split, then expand the left child
            int choice;
            if (stack[at].force_series) {
                choice = 0;
            } else {
                std::array<double, 3> w = cfg.op_weights;
                if (stack[at].budget < 3) w[1] = 0;  // parallel needs a >=2 branch
                choice = (w[0] + w[1] + w[2] <= 0) ? 0 : rng.weighted(w);
            }
            int b1 = 1 + static_cast<int>(
                             rng.below(static_cast<std::uint64_t>(stack[at].budget - 1)));
            int b2 = stack[at].budget - b1;
            stack[at].left_child = -1;
            stack[at].right_child = b2;  // stash the right budget
            Task left{stack[at].first, stack[at].second, b1, false};
            switch (choice) {
            case 0:
                stack[at].op = OpKind::Series;
                stack[at].mid = fresh();
                left.second = stack[at].mid;
                break;
            case 1: {
                stack[at].op = OpKind::Parallel;
                // The larger branch gets a series top so it cannot contain
                // a (first,second) leaf; see header note.
                bool left_big = b1 >= b2;
                left.force_series = left_big;
                stack[at].mid = left_big ? -2 : -3;
                break;
            }
            default:
                stack[at].op = OpKind::GenSeries;
                stack[at].mid = fresh();
                break;
            }
            stack.push_back(left);
        } else if (stack[at].left_child == -1) {
            // left subtree done; expand the right child
            stack[at].left_child = completed;
            int b2 = stack[at].right_child;
            stack[at].right_child = -1;
            Task right{stack[at].mid, stack[at].second, b2, false};  // series: (z, y)
            switch (stack[at].op) {
            case OpKind::Parallel:
                right.first = stack[at].first;
                right.force_series = stack[at].mid == -3;
                break;
            case OpKind::GenSeries:
                right.first = stack[at].second;  // (y, z)
                right.second = stack[at].mid;
                break;
            default: break;
            }
            stack.push_back(right);
        } else {
            completed = builder.compose(stack[at].op, stack[at].left_child, completed);
            stack.pop_back();
        }
    }
    return builder.finish(completed);
}

} // namespace gspdom
