#include "gspdom/expression.hpp"

#include "gspdom/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gspdom {

const char* to_string(OpKind kind) noexcept {
    switch (kind) {
    case OpKind::Primitive: return "e";
    case OpKind::Series: return "s";
    case OpKind::Parallel: return "p";
    case OpKind::GenSeries: return "g";
    }
    return "?";
}

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

} // namespace

bool GspExpression::structurally_equal(const GspExpression& other) const {
    if (node_count() != other.node_count() || leaf_count() != other.leaf_count()) return false;
    // Compare by shape and leaf labels; node ids and intern order may differ.
    std::vector<std::pair<std::int32_t, std::int32_t>> stack = {{root(), other.root()}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const ExprNode& na = node(a);
        const ExprNode& nb = other.node(b);
        if (na.kind != nb.kind) return false;
        if (na.kind == OpKind::Primitive) {
            if (label(na.terminals.first) != other.label(nb.terminals.first) ||
                label(na.terminals.second) != other.label(nb.terminals.second)) {
                return false;
            }
        } else {
            stack.emplace_back(na.left, nb.left);
            stack.emplace_back(na.right, nb.right);
        }
    }
    return true;
}

VertexId ExprBuilder::intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    VertexId id = static_cast<VertexId>(labels_.size());
    labels_.emplace_back(name);
    ids_.emplace(labels_.back(), id);
    leaf_uses_.push_back(0);
    share_uses_.push_back(0);
    return id;
}

std::int32_t ExprBuilder::add_node(ExprNode node) {
    nodes_.push_back(node);
    return static_cast<std::int32_t>(nodes_.size()) - 1;
}

void ExprBuilder::check_child(std::int32_t idx) const {
    if (idx < 0 || idx >= static_cast<std::int32_t>(nodes_.size())) {
        fail(ErrorKind::InvalidArgument, "child node index out of range");
    }
    if (consumed_[static_cast<size_t>(idx)]) {
        fail(ErrorKind::InvalidArgument, "node already used as a child");
    }
}

std::int32_t ExprBuilder::leaf(VertexId u, VertexId v) {
    if (u == v) fail(ErrorKind::SelfMerge, "leaf edge endpoints coincide: '" + name_of(u) + "'");
    if (!leaf_edges_.insert(edge_key(u, v)).second) {
        fail(ErrorKind::MultiEdge,
             "duplicate leaf edge (" + name_of(u) + "," + name_of(v) + ")");
    }
    ++leaf_uses_[static_cast<size_t>(u)];
    ++leaf_uses_[static_cast<size_t>(v)];
    ++leaf_count_;
    consumed_.push_back(0);
    return add_node(ExprNode{OpKind::Primitive, -1, -1, {u, v}});
}

std::int32_t ExprBuilder::series(std::int32_t left, std::int32_t right) {
    check_child(left);
    check_child(right);
    TerminalPair a = nodes_[static_cast<size_t>(left)].terminals;
    TerminalPair b = nodes_[static_cast<size_t>(right)].terminals;
    if (a.second != b.first) {
        fail(ErrorKind::TerminalMismatch,
             "series: left second terminal '" + name_of(a.second) +
                 "' != right first terminal '" + name_of(b.first) + "'");
    }
    if (a.first == b.second) {
        fail(ErrorKind::SelfMerge, "series would merge terminal '" + name_of(a.first) +
                                       "' with itself");
    }
    ++share_uses_[static_cast<size_t>(a.second)];
    consumed_[static_cast<size_t>(left)] = 1;
    consumed_[static_cast<size_t>(right)] = 1;
    consumed_.push_back(0);
    return add_node(ExprNode{OpKind::Series, left, right, {a.first, b.second}});
}

std::int32_t ExprBuilder::parallel(std::int32_t left, std::int32_t right) {
    check_child(left);
    check_child(right);
    TerminalPair a = nodes_[static_cast<size_t>(left)].terminals;
    TerminalPair b = nodes_[static_cast<size_t>(right)].terminals;
    if (a != b) {
        fail(ErrorKind::TerminalMismatch,
             "parallel: child terminal pairs differ: (" + name_of(a.first) + "," +
                 name_of(a.second) + ") vs (" + name_of(b.first) + "," + name_of(b.second) + ")");
    }
    ++share_uses_[static_cast<size_t>(a.first)];
    ++share_uses_[static_cast<size_t>(a.second)];
    consumed_[static_cast<size_t>(left)] = 1;
    consumed_[static_cast<size_t>(right)] = 1;
    consumed_.push_back(0);
    return add_node(ExprNode{OpKind::Parallel, left, right, a});
}

std::int32_t ExprBuilder::gen_series(std::int32_t left, std::int32_t right) {
    check_child(left);
    check_child(right);
    TerminalPair a = nodes_[static_cast<size_t>(left)].terminals;
    TerminalPair b = nodes_[static_cast<size_t>(right)].terminals;
    if (a.second != b.first) {
        fail(ErrorKind::TerminalMismatch,
             "gen-series: left second terminal '" + name_of(a.second) +
                 "' != right first terminal '" + name_of(b.first) + "'");
    }
    ++share_uses_[static_cast<size_t>(a.second)];
    consumed_[static_cast<size_t>(left)] = 1;
    consumed_[static_cast<size_t>(right)] = 1;
    consumed_.push_back(0);
    return add_node(ExprNode{OpKind::GenSeries, left, right, a});
}

std::int32_t ExprBuilder::compose(OpKind kind, std::int32_t left, std::int32_t right) {
    switch (kind) {
    case OpKind::Series: return series(left, right);
    case OpKind::Parallel: return parallel(left, right);
    case OpKind::GenSeries: return gen_series(left, right);
    case OpKind::Primitive: break;
    }
    fail(ErrorKind::InvalidArgument, "compose requires a binary op kind");
}

GspExpression ExprBuilder::finish(std::int32_t root) {
    if (nodes_.empty()) fail(ErrorKind::InvalidArgument, "empty expression");
    if (root != static_cast<std::int32_t>(nodes_.size()) - 1) {
        fail(ErrorKind::InvalidArgument, "root must be the last built node");
    }
    for (std::int32_t i = 0; i + 1 < static_cast<std::int32_t>(nodes_.size()); ++i) {
        if (!consumed_[static_cast<size_t>(i)]) {
            fail(ErrorKind::InvalidArgument, "node not reachable from the root");
        }
    }
    // Naming discipline: occurrences of one name collapse to one vertex
    // exactly when every extra occurrence is consumed by an identification,
    // i.e. shares(v) == leaf occurrences(v) - 1.
    for (VertexId v = 0; v < static_cast<VertexId>(labels_.size()); ++v) {
        auto uses = leaf_uses_[static_cast<size_t>(v)];
        auto shares = share_uses_[static_cast<size_t>(v)];
        if (uses == 0) {
            fail(ErrorKind::InvalidArgument, "vertex '" + name_of(v) + "' appears in no leaf");
        }
        if (shares != uses - 1) {
            fail(ErrorKind::NameCollision,
                 "name '" + name_of(v) + "' used for vertices that are never identified");
        }
    }
    GspExpression expr;
    expr.nodes_ = std::move(nodes_);
    expr.labels_ = std::move(labels_);
    expr.leaf_count_ = leaf_count_;
    *this = ExprBuilder();
    return expr;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    GspExpression run() {
        std::int32_t root = parse_all();
        skip_ws();
        if (pos_ != text_.size()) error("trailing input after expression");
        return builder_.finish(root);
    }

private:
    struct Frame {
        OpKind kind;
        std::int32_t left = -1;
        bool have_left = false;
    };

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::SyntaxError, what + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        skip_ws();
        if (peek() != c) error(std::string("expected '") + c + "'");
        ++pos_;
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    }

    std::string_view parse_ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (pos_ == start) error("expected identifier");
        return text_.substr(start, pos_ - start);
    }

    // Explicit-stack descent so arbitrarily deep expressions parse without
    // exhausting the call stack.
    std::int32_t parse_all() {
        std::vector<Frame> frames;
        std::int32_t completed = -1;
        for (;;) {
            if (completed < 0) {
                skip_ws();
                char c = peek();
                OpKind kind;
                switch (c) {
                case 'e': kind = OpKind::Primitive; break;
                case 's': kind = OpKind::Series; break;
                case 'p': kind = OpKind::Parallel; break;
                case 'g': kind = OpKind::GenSeries; break;
                default: error("expected one of e(, s(, p(, g(");
                }
                ++pos_;
                expect('(');
                if (kind == OpKind::Primitive) {
                    VertexId u = builder_.intern(parse_ident());
                    expect(',');
                    VertexId v = builder_.intern(parse_ident());
                    expect(')');
                    completed = builder_.leaf(u, v);
                } else {
                    frames.push_back(Frame{kind, -1, false});
                }
                continue;
            }
            if (frames.empty()) return completed;
            Frame& top = frames.back();
            if (!top.have_left) {
                top.left = completed;
                top.have_left = true;
                expect(',');
                completed = -1;
            } else {
                expect(')');
                completed = builder_.compose(top.kind, top.left, completed);
                frames.pop_back();
            }
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    ExprBuilder builder_;
};

} // namespace

GspExpression parse_expression(std::string_view text) { return Parser(text).run(); }

GspExpression parse_expression_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_expression(buf.str());
}

std::string render_expression(const GspExpression& expr) {
    for (const std::string& label : expr.labels()) {
        if (label.empty() ||
            !std::all_of(label.begin(), label.end(), [](char c) {
                return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
                       c == '-';
            })) {
            fail(ErrorKind::SyntaxError, "label '" + label + "' is not expressible in the grammar");
        }
    }
    std::string out;
    out.reserve(static_cast<size_t>(expr.node_count()) * 8);
    struct Item {
        std::int32_t node;
        int phase;
    };
    std::vector<Item> stack = {{expr.root(), 0}};
    while (!stack.empty()) {
        Item& top = stack.back();
        const ExprNode& n = expr.node(top.node);
        if (n.kind == OpKind::Primitive) {
            out += "e(";
            out += expr.label(n.terminals.first);
            out += ',';
            out += expr.label(n.terminals.second);
            out += ')';
            stack.pop_back();
            continue;
        }
        if (top.phase == 0) {
            out += to_string(n.kind);
            out += '(';
            top.phase = 1;
            stack.push_back({n.left, 0});
        } else if (top.phase == 1) {
            out += ',';
            top.phase = 2;
            stack.push_back({n.right, 0});
        } else {
            out += ')';
            stack.pop_back();
        }
    }
    return out;
}

// ------------------------------------------------------------- flattening

FlattenResult flatten(const GspExpression& expr) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(static_cast<size_t>(expr.leaf_count()));
    for (const ExprNode& n : expr.nodes()) {
        if (n.kind == OpKind::Primitive) {
            edges.emplace_back(n.terminals.first, n.terminals.second);
        }
    }
    return FlattenResult{Graph(expr.labels(), edges), expr.terminals()};
}

FlattenResult flatten_subtree(const GspExpression& expr, std::int32_t node) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::int32_t> stack = {node};
    while (!stack.empty()) {
        const ExprNode& n = expr.node(stack.back());
        stack.pop_back();
        if (n.kind == OpKind::Primitive) {
            edges.emplace_back(n.terminals.first, n.terminals.second);
        } else {
            // right pushed first so leaves come out left-to-right
            stack.push_back(n.right);
            stack.push_back(n.left);
        }
    }
    std::vector<std::string> labels;
    std::unordered_map<VertexId, VertexId> remap;
    auto local = [&](VertexId v) {
        auto it = remap.find(v);
        if (it != remap.end()) return it->second;
        VertexId id = static_cast<VertexId>(labels.size());
        labels.push_back(expr.label(v));
        remap.emplace(v, id);
        return id;
    };
    for (auto& [u, v] : edges) {
        u = local(u);
        v = local(v);
    }
    TerminalPair t = expr.node(node).terminals;
    return FlattenResult{Graph(std::move(labels), edges),
                         TerminalPair{remap.at(t.first), remap.at(t.second)}};
}

// ------------------------------------------------- graph-level composition

TerminalGraph compose(OpKind kind, const TerminalGraph& g1, const TerminalGraph& g2) {
    if (kind == OpKind::Primitive) {
        fail(ErrorKind::InvalidArgument, "compose requires a binary op kind");
    }
    const std::string& s1 = g1.graph.label(g1.terminals.first);
    const std::string& t1 = g1.graph.label(g1.terminals.second);
    const std::string& s2 = g2.graph.label(g2.terminals.first);
    const std::string& t2 = g2.graph.label(g2.terminals.second);

    std::vector<std::string> identified;
    std::string rfirst, rsecond;
    switch (kind) {
    case OpKind::Series:
        if (t1 != s2) fail(ErrorKind::TerminalMismatch, "series: '" + t1 + "' != '" + s2 + "'");
        if (s1 == t2) fail(ErrorKind::SelfMerge, "series would merge terminal '" + s1 + "' with itself");
        identified = {t1};
        rfirst = s1;
        rsecond = t2;
        break;
    case OpKind::Parallel:
        if (s1 != s2 || t1 != t2) {
            fail(ErrorKind::TerminalMismatch,
                 "parallel: (" + s1 + "," + t1 + ") vs (" + s2 + "," + t2 + ")");
        }
        identified = {s1, t1};
        rfirst = s1;
        rsecond = t1;
        break;
    case OpKind::GenSeries:
        if (t1 != s2) fail(ErrorKind::TerminalMismatch, "gen-series: '" + t1 + "' != '" + s2 + "'");
        identified = {t1};
        rfirst = s1;
        rsecond = t1;
        break;
    case OpKind::Primitive: break;
    }

    std::unordered_set<std::string> left_labels(g1.graph.labels().begin(), g1.graph.labels().end());
    for (const std::string& l : g2.graph.labels()) {
        if (left_labels.count(l) &&
            std::find(identified.begin(), identified.end(), l) == identified.end()) {
            fail(ErrorKind::NameCollision, "vertex name '" + l + "' shared but not identified");
        }
    }

    std::vector<std::pair<std::string, std::string>> edges;
    std::unordered_set<std::string> seen_edges;
    auto push_edges = [&](const Graph& g) {
        for (auto [u, v] : g.edges()) {
            std::string a = g.label(u), b = g.label(v);
            if (b < a) std::swap(a, b);
            if (!seen_edges.insert(a + "\x1f" + b).second) {
                fail(ErrorKind::MultiEdge, "identification creates parallel edge (" + a + "," + b + ")");
            }
            edges.emplace_back(a, b);
        }
    };
    push_edges(g1.graph);
    push_edges(g2.graph);

    Graph merged = build_graph(edges);
    TerminalPair result{*merged.find_label(rfirst), *merged.find_label(rsecond)};
    return TerminalGraph{std::move(merged), result};
}

} // namespace gspdom
