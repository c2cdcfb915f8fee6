#include "gspdom/recognize.hpp"

#include "gspdom/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace gspdom {

namespace {

// Derivation record of one super-edge. Reduction is pure bookkeeping; the
// expression is materialized afterwards, once the root orientation is
// known. Children are unordered at this stage: a record can realize either
// orientation of its endpoint pair, with one exception tracked separately.
//
// The exception: a pendant merge hangs a subtree off its attach vertex, and
// a dangling subtree can never sit at the FIRST terminal of an expression.
// While the attach vertex stays an endpoint this pins the usable
// orientations (the anchor bits below). Once a series merge interiorizes
// the vertex, the dangler can re-hang onto the incoming chain, so anchors
// are cleared there. Materialization moves such displaced danglers around
// as "leftovers".
struct Record {
    OpKind kind;
    VertexId a = -1;          // endpoints: leaf/parallel (a,b); series (x,y);
    VertexId b = -1;          //   pendant host pair (far, attach)
    VertexId z = -1;          // series interior; pendant far end
    std::int32_t r1 = -1;     // series: the (a,z) child; pendant: the host
    std::int32_t r2 = -1;     // series: the (z,b) child; pendant: the dangler
};

struct SuperEdge {
    VertexId a;
    VertexId b;
    std::int32_t rec;
    bool anchor_a;  // a dangler hangs at this endpoint
    bool anchor_b;
    bool alive;
};

std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

class Reducer {
public:
    explicit Reducer(const Graph& g) : graph_(g) {}

    RecognizeResult run() {
        if (graph_.vertex_count() == 0 || graph_.edge_count() == 0) {
            fail(ErrorKind::EmptyGraph, "recognize needs at least one edge");
        }
        if (!graph_.connected()) {
            fail(ErrorKind::Disconnected, "recognize needs a connected graph");
        }
        init();
        reduce();

        RecognizeResult result;
        result.residual_super_edges = alive_count_;
        if (alive_count_ != 1) return result;

        const SuperEdge* top = nullptr;
        for (const SuperEdge& e : edges_) {
            if (e.alive) top = &e;
        }
        if (top->anchor_a && top->anchor_b) {
            // danglers at both remaining endpoints: no orientation works
            return result;
        }
        VertexId first = top->anchor_a ? top->b : top->a;
        VertexId second = top->anchor_a ? top->a : top->b;
        result.expression = materialize(top->rec, first, second);
        verify(*result.expression);
        return result;
    }

private:
    // ---------------------------------------------------------- reduction

    void init() {
        const int n = graph_.vertex_count();
        incident_.resize(static_cast<size_t>(n));
        degree_.assign(static_cast<size_t>(n), 0);
        for (auto [u, v] : graph_.edges()) {
            std::int32_t rec = static_cast<std::int32_t>(records_.size());
            records_.push_back(Record{OpKind::Primitive, u, v, -1, -1, -1});
            add_edge(SuperEdge{u, v, rec, false, false, true});
        }
    }

    std::int32_t add_edge(SuperEdge e) {
        std::int32_t id = static_cast<std::int32_t>(edges_.size());
        edges_.push_back(e);
        incident_[static_cast<size_t>(e.a)].push_back(id);
        incident_[static_cast<size_t>(e.b)].push_back(id);
        ++degree_[static_cast<size_t>(e.a)];
        ++degree_[static_cast<size_t>(e.b)];
        ++alive_count_;
        auto key = pair_key(e.a, e.b);
        buckets_[key].push_back(id);
        if (bucket_alive(key) >= 2) hot_pairs_.insert(key);
        refresh(e.a);
        refresh(e.b);
        return id;
    }

    void kill_edge(std::int32_t id) {
        SuperEdge& e = edges_[static_cast<size_t>(id)];
        e.alive = false;
        --degree_[static_cast<size_t>(e.a)];
        --degree_[static_cast<size_t>(e.b)];
        --alive_count_;
        refresh(e.a);
        refresh(e.b);
    }

    void refresh(VertexId v) {
        deg1_.erase(v);
        deg2_.erase(v);
        int d = degree_[static_cast<size_t>(v)];
        if (d == 1) deg1_.insert(v);
        if (d == 2) deg2_.insert(v);
    }

    int bucket_alive(std::uint64_t key) {
        auto it = buckets_.find(key);
        if (it == buckets_.end()) return 0;
        auto& list = it->second;
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [&](std::int32_t id) {
                                      return !edges_[static_cast<size_t>(id)].alive;
                                  }),
                   list.end());
        return static_cast<int>(list.size());
    }

    std::vector<std::int32_t> alive_incident(VertexId v) {
        auto& list = incident_[static_cast<size_t>(v)];
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [&](std::int32_t id) {
                                      const SuperEdge& e = edges_[static_cast<size_t>(id)];
                                      return !e.alive || (e.a != v && e.b != v);
                                  }),
                   list.end());
        return list;
    }

    static bool anchor_at(const SuperEdge& e, VertexId v) {
        return v == e.a ? e.anchor_a : e.anchor_b;
    }

    bool try_parallel() {
        while (!hot_pairs_.empty()) {
            std::uint64_t key = *hot_pairs_.begin();
            if (bucket_alive(key) < 2) {
                hot_pairs_.erase(hot_pairs_.begin());
                continue;
            }
            auto list = buckets_[key];
            std::sort(list.begin(), list.end());
            std::int32_t i1 = list[0], i2 = list[1];
            const SuperEdge e1 = edges_[static_cast<size_t>(i1)];
            const SuperEdge e2 = edges_[static_cast<size_t>(i2)];
            std::int32_t rec = static_cast<std::int32_t>(records_.size());
            records_.push_back(Record{OpKind::Parallel, e1.a, e1.b, -1, e1.rec, e2.rec});
            kill_edge(i1);
            kill_edge(i2);
            add_edge(SuperEdge{e1.a, e1.b, rec,
                               anchor_at(e1, e1.a) || anchor_at(e2, e1.a),
                               anchor_at(e1, e1.b) || anchor_at(e2, e1.b), true});
            return true;
        }
        return false;
    }

    bool try_series() {
        while (!deg2_.empty()) {
            VertexId z = *deg2_.begin();
            auto inc = alive_incident(z);
            if (inc.size() != 2) {
                fail(ErrorKind::InternalError, "degree bookkeeping out of sync");
            }
            std::int32_t i1 = std::min(inc[0], inc[1]);
            std::int32_t i2 = std::max(inc[0], inc[1]);
            const SuperEdge e1 = edges_[static_cast<size_t>(i1)];
            const SuperEdge e2 = edges_[static_cast<size_t>(i2)];
            VertexId x = e1.a == z ? e1.b : e1.a;
            VertexId y = e2.a == z ? e2.b : e2.a;
            if (x == y) {
                // twin edges; the parallel rule owns this pair
                deg2_.erase(z);
                continue;
            }
            std::int32_t rec = static_cast<std::int32_t>(records_.size());
            records_.push_back(Record{OpKind::Series, x, y, z, e1.rec, e2.rec});
            kill_edge(i1);
            kill_edge(i2);
            // z is interior now; danglers at z re-hang during materialization
            add_edge(SuperEdge{x, y, rec, anchor_at(e1, x), anchor_at(e2, y), true});
            return true;
        }
        return false;
    }

    bool try_pendant() {
        if (deg1_.empty()) return false;
        VertexId w = *deg1_.begin();
        auto inc = alive_incident(w);
        if (inc.size() != 1) {
            fail(ErrorKind::InternalError, "degree bookkeeping out of sync");
        }
        std::int32_t pid = inc[0];
        const SuperEdge p = edges_[static_cast<size_t>(pid)];
        VertexId v = p.a == w ? p.b : p.a;
        auto hosts = alive_incident(v);
        std::int32_t host = -1;
        for (std::int32_t id : hosts) {
            if (id != pid && (host < 0 || id < host)) host = id;
        }
        if (host < 0) {
            fail(ErrorKind::InternalError, "pendant without host on a connected graph");
        }
        const SuperEdge h = edges_[static_cast<size_t>(host)];
        VertexId far = h.a == v ? h.b : h.a;
        std::int32_t rec = static_cast<std::int32_t>(records_.size());
        records_.push_back(Record{OpKind::GenSeries, far, v, w, h.rec, p.rec});
        kill_edge(host);
        kill_edge(pid);
        add_edge(SuperEdge{far, v, rec, anchor_at(h, far), true, true});
        return true;
    }

    void reduce() {
        while (alive_count_ > 1) {
            if (try_parallel()) continue;
            if (try_series()) continue;
            if (try_pendant()) continue;
            break;
        }
    }

    // ----------------------------------------------------- materialization

    // A dangling subtree displaced from `anchor`; realized on demand as an
    // (anchor, far)-expression.
    struct Leftover {
        VertexId anchor;
        std::int32_t rec;
        VertexId far;
    };

    struct Frame {
        Frame(std::int32_t rec_, VertexId alpha_, VertexId beta_)
            : rec(rec_), alpha(alpha_), beta(beta_) {}

        std::int32_t rec;
        VertexId alpha;
        VertexId beta;
        int phase = 0;
        std::int32_t n1 = -1;
        std::int32_t n2 = -1;
        std::vector<Leftover> pending;
    };

    VertexId intern(ExprBuilder& builder, VertexId v) {
        return builder.intern(graph_.label(v));
    }

    // Pops the first pending leftover anchored at `at`, if any.
    static bool take_leftover(std::vector<Leftover>& pending, VertexId at, Leftover& out) {
        for (size_t i = 0; i < pending.size(); ++i) {
            if (pending[i].anchor == at) {
                out = pending[i];
                pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
                return true;
            }
        }
        return false;
    }

    GspExpression materialize(std::int32_t root, VertexId first, VertexId second) {
        ExprBuilder builder;
        std::vector<Frame> stack;
        stack.push_back(Frame{root, first, second});
        std::int32_t done_node = -1;
        std::vector<Leftover> done_leftovers;

        // Frame protocol: phases 0/1 materialize the two parts, phase 2
        // re-hangs leftovers (series: onto the (alpha,z) part before the
        // series compose; all kinds: onto the assembled node at beta),
        // phase 3 consumes one re-hung dangler and loops back to 2.
        while (!stack.empty()) {
            size_t at = stack.size() - 1;
            const Record rec = records_[static_cast<size_t>(stack[at].rec)];
            VertexId alpha = stack[at].alpha;
            VertexId beta = stack[at].beta;
            bool flipped = alpha != rec.a;

            if (rec.kind == OpKind::Primitive && stack[at].phase == 0) {
                VertexId iu = intern(builder, alpha);
                VertexId iv = intern(builder, beta);
                done_node = builder.leaf(iu, iv);
                done_leftovers.clear();
                stack.pop_back();
                continue;
            }

            switch (stack[at].phase) {
            case 0: {
                stack[at].phase = 1;
                if (rec.kind == OpKind::Series) {
                    stack.push_back(Frame{flipped ? rec.r2 : rec.r1, alpha, rec.z});
                } else {  // parallel / gen-series: first part spans (alpha, beta)
                    stack.push_back(Frame{rec.r1, alpha, beta});
                }
                continue;
            }
            case 1: {
                stack[at].n1 = done_node;
                stack[at].pending.insert(stack[at].pending.end(), done_leftovers.begin(),
                                         done_leftovers.end());
                stack[at].phase = 2;
                if (rec.kind == OpKind::Series) {
                    stack.push_back(Frame{flipped ? rec.r1 : rec.r2, rec.z, beta});
                    continue;
                }
                if (rec.kind == OpKind::Parallel) {
                    stack.push_back(Frame{rec.r2, alpha, beta});
                    continue;
                }
                // GenSeries
                if (!flipped) {
                    // natural orientation: the dangler hangs at beta
                    stack.push_back(Frame{rec.r2, beta, rec.z});
                    continue;
                }
                // flipped: the dangler is displaced to alpha and travels up
                stack[at].pending.push_back(Leftover{alpha, rec.r2, rec.z});
                stack[at].n2 = -2;  // no second part
                continue;
            }
            case 2: {
                if (stack[at].n2 == -1) {
                    stack[at].n2 = done_node;
                    stack[at].pending.insert(stack[at].pending.end(), done_leftovers.begin(),
                                             done_leftovers.end());
                }
                // series: danglers at the interior vertex re-hang onto the
                // (alpha, z) part before composing
                if (rec.kind == OpKind::Series) {
                    Leftover d;
                    if (take_leftover(stack[at].pending, rec.z, d)) {
                        stack[at].phase = 3;
                        stack.push_back(Frame{d.rec, rec.z, d.far});
                        continue;
                    }
                }
                // assemble this node
                std::int32_t node;
                if (rec.kind == OpKind::Series) {
                    node = builder.series(stack[at].n1, stack[at].n2);
                } else if (rec.kind == OpKind::Parallel) {
                    node = builder.parallel(stack[at].n1, stack[at].n2);
                } else if (stack[at].n2 == -2) {
                    node = stack[at].n1;  // flipped pendant: host only
                } else {
                    node = builder.gen_series(stack[at].n1, stack[at].n2);
                }
                // danglers at beta attach below this node
                Leftover d;
                if (take_leftover(stack[at].pending, beta, d)) {
                    stack[at].phase = 4;
                    stack[at].n1 = node;
                    stack.push_back(Frame{d.rec, beta, d.far});
                    continue;
                }
                done_node = node;
                done_leftovers = std::move(stack[at].pending);
                stack.pop_back();
                continue;
            }
            case 3: {  // series interior dangler materialized: wrap n1
                std::int32_t dangler = done_node;
                stack[at].pending.insert(stack[at].pending.end(), done_leftovers.begin(),
                                         done_leftovers.end());
                stack[at].n1 = builder.gen_series(stack[at].n1, dangler);
                stack[at].phase = 2;
                continue;
            }
            case 4: {  // beta dangler materialized: wrap the assembled node
                std::int32_t dangler = done_node;
                stack[at].pending.insert(stack[at].pending.end(), done_leftovers.begin(),
                                         done_leftovers.end());
                std::int32_t node = builder.gen_series(stack[at].n1, dangler);
                Leftover d;
                if (take_leftover(stack[at].pending, beta, d)) {
                    stack[at].n1 = node;
                    stack.push_back(Frame{d.rec, beta, d.far});
                    continue;
                }
                done_node = node;
                done_leftovers = std::move(stack[at].pending);
                stack.pop_back();
                continue;
            }
            default: fail(ErrorKind::InternalError, "bad materialization phase");
            }
        }
        if (!done_leftovers.empty()) {
            fail(ErrorKind::InternalError, "unplaced danglers after materialization");
        }
        return builder.finish(done_node);
    }

    // A recognizer result must flatten back to the input graph.
    void verify(const GspExpression& expr) {
        FlattenResult flat = flatten(expr);
        if (flat.graph.vertex_count() != graph_.vertex_count() ||
            flat.graph.edge_count() != graph_.edge_count()) {
            fail(ErrorKind::InternalError, "recognized expression flattens to a different graph");
        }
        for (auto [u, v] : flat.graph.edges()) {
            auto a = graph_.find_label(flat.graph.label(u));
            auto b = graph_.find_label(flat.graph.label(v));
            if (!a || !b || !graph_.has_edge(*a, *b)) {
                fail(ErrorKind::InternalError,
                     "recognized expression flattens to a different graph");
            }
        }
    }

    const Graph& graph_;
    std::vector<Record> records_;
    std::vector<SuperEdge> edges_;
    std::vector<std::vector<std::int32_t>> incident_;
    std::vector<int> degree_;
    std::map<std::uint64_t, std::vector<std::int32_t>> buckets_;
    std::set<std::uint64_t> hot_pairs_;
    std::set<VertexId> deg1_;
    std::set<VertexId> deg2_;
    int alive_count_ = 0;
};

} // namespace

RecognizeResult recognize(const Graph& g) { return Reducer(g).run(); }

} // namespace gspdom
