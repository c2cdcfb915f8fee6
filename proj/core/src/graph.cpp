#include "gspdom/graph.hpp"

#include "gspdom/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gspdom {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::ForeignVertex: return "ForeignVertex";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::TerminalMismatch: return "TerminalMismatch";
    case ErrorKind::NameCollision: return "NameCollision";
    case ErrorKind::SelfMerge: return "SelfMerge";
    case ErrorKind::MultiEdge: return "MultiEdge";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ValidationFailure: return "ValidationFailure";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

Graph::Graph(std::vector<std::string> labels,
             const std::vector<std::pair<VertexId, VertexId>>& edges)
    : labels_(std::move(labels)), adj_(labels_.size()) {
    for (VertexId v = 0; v < vertex_count(); ++v) {
        by_label_.emplace(labels_[static_cast<size_t>(v)], v);
    }
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
            fail(ErrorKind::InvalidArgument, "edge endpoint out of range");
        }
        if (u == v) {
            fail(ErrorKind::SelfLoop, "self-loop at '" + labels_[static_cast<size_t>(u)] + "'");
        }
        adj_[static_cast<size_t>(u)].push_back(v);
        adj_[static_cast<size_t>(v)].push_back(u);
    }
    edge_count_ = 0;
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        edge_count_ += static_cast<int>(list.size());
    }
    edge_count_ /= 2;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    const auto& list = adj_[static_cast<size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

bool Graph::connected() const {
    if (vertex_count() == 0) return true;
    std::vector<char> seen(static_cast<size_t>(vertex_count()), 0);
    std::vector<VertexId> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : adj_[static_cast<size_t>(v)]) {
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == vertex_count();
}

std::optional<VertexId> Graph::find_label(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(static_cast<size_t>(edge_count_));
    for (VertexId u = 0; u < vertex_count(); ++u) {
        for (VertexId v : adj_[static_cast<size_t>(u)]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

VertexSet::VertexSet(int universe_size)
    : words_(static_cast<size_t>((universe_size + 63) / 64), 0), universe_(universe_size) {}

void VertexSet::insert(VertexId v) {
    if (v < 0 || v >= universe_) fail(ErrorKind::ForeignVertex, "vertex id out of range");
    auto& w = words_[static_cast<size_t>(v) / 64];
    std::uint64_t bit = std::uint64_t{1} << (static_cast<unsigned>(v) % 64);
    if (!(w & bit)) {
        w |= bit;
        ++count_;
    }
}

void VertexSet::erase(VertexId v) {
    if (v < 0 || v >= universe_) fail(ErrorKind::ForeignVertex, "vertex id out of range");
    auto& w = words_[static_cast<size_t>(v) / 64];
    std::uint64_t bit = std::uint64_t{1} << (static_cast<unsigned>(v) % 64);
    if (w & bit) {
        w &= ~bit;
        --count_;
    }
}

bool VertexSet::contains(VertexId v) const {
    if (v < 0 || v >= universe_) return false;
    return (words_[static_cast<size_t>(v) / 64] >> (static_cast<unsigned>(v) % 64)) & 1;
}

std::vector<VertexId> VertexSet::to_vector() const {
    std::vector<VertexId> out;
    out.reserve(static_cast<size_t>(count_));
    for (VertexId v = 0; v < universe_; ++v) {
        if (contains(v)) out.push_back(v);
    }
    return out;
}

Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, VertexId> ids;
    auto intern = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        VertexId id = static_cast<VertexId>(labels.size());
        labels.push_back(name);
        ids.emplace(name, id);
        return id;
    };
    std::vector<std::pair<VertexId, VertexId>> id_edges;
    id_edges.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a == b) fail(ErrorKind::SelfLoop, "self-loop at '" + a + "'");
        VertexId u = intern(a);  // sequenced: ids follow first appearance
        VertexId v = intern(b);
        id_edges.emplace_back(u, v);
    }
    return Graph(std::move(labels), id_edges);
}

Graph read_edge_list(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b) || (fields >> extra)) {
            fail(ErrorKind::SyntaxError,
                 "edge list line " + std::to_string(lineno) + ": expected two labels");
        }
        edges.emplace_back(std::move(a), std::move(b));
    }
    return build_graph(edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    return read_edge_list(in);
}

namespace {

void require_same_universe(const Graph& g, const VertexSet& s) {
    if (s.universe_size() != g.vertex_count()) {
        fail(ErrorKind::ForeignVertex, "set universe does not match graph");
    }
}

int dominators(const Graph& g, const VertexSet& s, VertexId v) {
    int count = 0;
    for (VertexId w : g.neighbors(v)) {
        if (s.contains(w)) ++count;
    }
    return count;
}

} // namespace

std::optional<SetViolation> find_domination_violation(const Graph& g, const VertexSet& s) {
    require_same_universe(g, s);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (s.contains(v)) continue;
        int d = dominators(g, s, v);
        if (d < 1) return SetViolation{v, d};
    }
    return std::nullopt;
}

std::optional<SetViolation> find_12_violation(const Graph& g, const VertexSet& s) {
    require_same_universe(g, s);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (s.contains(v)) continue;
        int d = dominators(g, s, v);
        if (d < 1 || d > 2) return SetViolation{v, d};
    }
    return std::nullopt;
}

std::optional<SetViolation> find_total_12_violation(const Graph& g, const VertexSet& s) {
    require_same_universe(g, s);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        int d = dominators(g, s, v);
        if (d < 1 || d > 2) return SetViolation{v, d};
    }
    return std::nullopt;
}

bool is_dominating_set(const Graph& g, const VertexSet& s) {
    return !find_domination_violation(g, s).has_value();
}

bool is_12_set(const Graph& g, const VertexSet& s) {
    return !find_12_violation(g, s).has_value();
}

bool is_total_12_set(const Graph& g, const VertexSet& s) {
    return !find_total_12_violation(g, s).has_value();
}

} // namespace gspdom
