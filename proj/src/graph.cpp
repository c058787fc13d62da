#include "sstress/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "sstress/shortest_paths.hpp"

namespace sstress {

Graph::Graph(NodeId node_count, std::vector<std::int64_t> external_ids,
             const std::vector<std::tuple<NodeId, NodeId, double>>& edges)
    : n_(node_count), m_(edges.size()), external_ids_(std::move(external_ids)) {
    if (n_ < 1) throw ValidationError("graph must have at least one node");
    weighted_ = false;
    std::vector<std::size_t> deg(n_, 0);
    for (const auto& [u, v, len] : edges) {
        if (u == v) throw ValidationError("self-loop in edge set");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ValidationError("edge endpoint out of range");
        if (!(len > 0) || !std::isfinite(len)) throw ValidationError("edge length must be positive and finite");
        if (len != 1.0) weighted_ = true;
        ++deg[u];
        ++deg[v];
    }
    offsets_.assign(n_ + 1, 0);
    for (NodeId v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    edges_.resize(2 * m_);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v, len] : edges) {
        edges_[cursor[u]++] = {v, len};
        edges_[cursor[v]++] = {u, len};
    }
    for (NodeId v = 0; v < n_; ++v) {
        std::sort(edges_.begin() + offsets_[v], edges_.begin() + offsets_[v + 1],
                  [](const Edge& a, const Edge& b) { return a.to < b.to; });
    }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto adj = neighbors(u);
    auto it = std::lower_bound(adj.begin(), adj.end(), v,
                               [](const Edge& e, NodeId id) { return e.to < id; });
    return it != adj.end() && it->to == v;
}

double Graph::total_edge_length() const {
    double sum = 0;
    for (NodeId v = 0; v < n_; ++v)
        for (const Edge& e : neighbors(v))
            if (v < e.to) sum += e.length;
    return sum;
}

bool Graph::is_connected() const {
    std::vector<char> seen(n_, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    NodeId count = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (const Edge& e : neighbors(v)) {
            if (!seen[e.to]) {
                seen[e.to] = 1;
                ++count;
                stack.push_back(e.to);
            }
        }
    }
    return count == n_;
}

void GraphBuilder::add_node(std::int64_t external_id) { intern(external_id); }

NodeId GraphBuilder::intern(std::int64_t external_id) {
    if (map_dirty_) {
        std::sort(id_map_.begin(), id_map_.end());
        map_dirty_ = false;
    }
    auto it = std::lower_bound(id_map_.begin(), id_map_.end(),
                               std::make_pair(external_id, NodeId{0}));
    if (it != id_map_.end() && it->first == external_id) return it->second;
    NodeId id = static_cast<NodeId>(external_ids_.size());
    external_ids_.push_back(external_id);
    id_map_.insert(it, {external_id, id});
    return id;
}

void GraphBuilder::add_edge(std::int64_t u, std::int64_t v, double length, long line) {
    if (!(length > 0) || !std::isfinite(length))
        throw ValidationError("edge length must be positive", line);
    NodeId a = intern(u);
    NodeId b = intern(v);
    if (a == b) return;  // self-loop
    edges_.emplace_back(a, b, length);
}

Graph GraphBuilder::build() const {
    NodeId n = static_cast<NodeId>(external_ids_.size());
    if (n == 0) throw ValidationError("empty graph");
    // collapse duplicates, keeping the first occurrence
    std::vector<std::tuple<NodeId, NodeId, double>> unique_edges;
    unique_edges.reserve(edges_.size());
    std::vector<std::pair<NodeId, NodeId>> keys;
    keys.reserve(edges_.size());
    for (const auto& [u, v, len] : edges_) {
        auto key = std::minmax(u, v);
        keys.emplace_back(key.first, key.second);
    }
    std::vector<std::size_t> order(keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<char> keep(keys.size(), 0);
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        std::size_t first = order[i];
        while (j < order.size() && keys[order[j]] == keys[order[i]]) {
            first = std::min(first, order[j]);  // earliest occurrence wins
            ++j;
        }
        keep[first] = 1;
        i = j;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (keep[i]) unique_edges.push_back(edges_[i]);
    return Graph(n, external_ids_, unique_edges);
}

namespace {

bool parse_int64(std::string_view tok, std::int64_t& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
}

bool parse_double(std::string_view tok, double& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    GraphBuilder builder;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2 && toks.size() != 3)
            throw ParseError("expected `u v [length]`", line_no);
        std::int64_t u, v;
        if (!parse_int64(toks[0], u) || !parse_int64(toks[1], v))
            throw ParseError("malformed node id", line_no);
        if (u < 0 || v < 0) throw ParseError("node ids must be non-negative", line_no);
        double len = 1.0;
        if (toks.size() == 3 && !parse_double(toks[2], len))
            throw ParseError("malformed edge length", line_no);
        builder.add_edge(u, v, len, line_no);
    }
    return builder.build();
}

Graph parse_matrix_market(std::istream& in) {
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty MatrixMarket stream", 1);
    ++line_no;
    {
        std::istringstream header(line);
        std::string banner, object, format;
        header >> banner >> object >> format;
        if (banner != "%%MatrixMarket" || object != "matrix")
            throw ParseError("not a MatrixMarket matrix", line_no);
        if (format != "coordinate")
            throw ParseError("unsupported MatrixMarket format `" + format + "` (coordinate only)",
                             line_no);
    }
    // skip comments, read size line
    bool have_size = false;
    std::size_t nnz = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '%') continue;
        auto toks = split_ws(line);
        std::int64_t rows, cols, entries;
        if (toks.size() != 3 || !parse_int64(toks[0], rows) || !parse_int64(toks[1], cols) ||
            !parse_int64(toks[2], entries))
            throw ParseError("malformed size line", line_no);
        nnz = static_cast<std::size_t>(entries);
        have_size = true;
        break;
    }
    if (!have_size) throw ParseError("missing size line", line_no);
    GraphBuilder builder;
    std::size_t read = 0;
    while (read < nnz && std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '%') continue;
        auto toks = split_ws(line);
        if (toks.size() < 2) throw ParseError("malformed entry", line_no);
        std::int64_t u, v;
        if (!parse_int64(toks[0], u) || !parse_int64(toks[1], v))
            throw ParseError("malformed entry indices", line_no);
        ++read;
        builder.add_node(u);
        builder.add_node(v);
        if (u == v) continue;                 // diagonal dropped
        builder.add_edge(u, v, 1.0, line_no);  // pattern use; values ignored
    }
    if (read < nnz) throw ParseError("truncated entry list", line_no);
    return builder.build();
}

Graph largest_component(const Graph& g) {
    NodeId n = g.node_count();
    std::vector<NodeId> comp(n, -1);
    NodeId num_comps = 0;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = num_comps;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (const Edge& e : g.neighbors(v)) {
                if (comp[e.to] < 0) {
                    comp[e.to] = num_comps;
                    stack.push_back(e.to);
                }
            }
        }
        ++num_comps;
    }
    std::vector<NodeId> size(num_comps, 0);
    std::vector<std::int64_t> min_ext(num_comps, std::numeric_limits<std::int64_t>::max());
    for (NodeId v = 0; v < n; ++v) {
        ++size[comp[v]];
        min_ext[comp[v]] = std::min(min_ext[comp[v]], g.external_id(v));
    }
    NodeId best = 0;
    for (NodeId c = 1; c < num_comps; ++c) {
        if (size[c] > size[best] || (size[c] == size[best] && min_ext[c] < min_ext[best]))
            best = c;
    }
    std::vector<NodeId> remap(n, -1);
    std::vector<std::int64_t> ext;
    ext.reserve(size[best]);
    for (NodeId v = 0; v < n; ++v) {
        if (comp[v] == best) {
            remap[v] = static_cast<NodeId>(ext.size());
            ext.push_back(g.external_id(v));
        }
    }
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    for (NodeId v = 0; v < n; ++v) {
        if (comp[v] != best) continue;
        for (const Edge& e : g.neighbors(v))
            if (v < e.to) edges.emplace_back(remap[v], remap[e.to], e.length);
    }
    NodeId kept = static_cast<NodeId>(ext.size());
    return Graph(kept, std::move(ext), edges);
}

namespace {

Graph from_unit_edges(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::vector<std::int64_t> ext(n);
    for (NodeId v = 0; v < n; ++v) ext[v] = v;
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.emplace_back(u, v, 1.0);
    return Graph(n, std::move(ext), edges);
}

void check_size(std::int64_t n) {
    if (n < 1) throw ConfigError("generator size must be >= 1");
    if (n > std::int64_t{1} << 30) throw ConfigError("generator size too large");
}

}  // namespace

Graph make_path(NodeId n) {
    check_size(n);
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return from_unit_edges(n, e);
}

Graph make_cycle(NodeId n) {
    check_size(n);
    if (n < 3) throw ConfigError("cycle needs at least 3 nodes");
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    e.emplace_back(n - 1, 0);
    return from_unit_edges(n, e);
}

Graph make_grid(NodeId rows, NodeId cols) {
    check_size(rows);
    check_size(cols);
    check_size(static_cast<std::int64_t>(rows) * cols);
    NodeId n = rows * cols;
    std::vector<std::pair<NodeId, NodeId>> e;
    auto id = [cols](NodeId r, NodeId c) { return r * cols + c; };
    for (NodeId r = 0; r < rows; ++r) {
        for (NodeId c = 0; c < cols; ++c) {
            if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    return from_unit_edges(n, e);
}

Graph make_complete_binary_tree(int depth) {
    if (depth < 0) throw ConfigError("depth must be >= 0");
    if (depth > 24) throw ConfigError("tree depth too large");
    NodeId n = static_cast<NodeId>((std::int64_t{1} << (depth + 1)) - 1);
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId v = 0; 2 * v + 2 < n; ++v) {  // heap numbering = BFS order
        e.emplace_back(v, 2 * v + 1);
        e.emplace_back(v, 2 * v + 2);
    }
    return from_unit_edges(n, e);
}

Graph make_star(NodeId leaves) {
    check_size(leaves);
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return from_unit_edges(leaves + 1, e);
}

Graph make_generated(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto parse_n = [&](const std::string& s) {
        std::int64_t v;
        if (!parse_int64(s, v) || v < 0) throw ConfigError("bad generator parameter `" + s + "`");
        return v;
    };
    if (kind == "path") return make_path(static_cast<NodeId>(parse_n(params)));
    if (kind == "cycle") return make_cycle(static_cast<NodeId>(parse_n(params)));
    if (kind == "btree") return make_complete_binary_tree(static_cast<int>(parse_n(params)));
    if (kind == "star") return make_star(static_cast<NodeId>(parse_n(params)));
    if (kind == "grid") {
        auto x = params.find('x');
        if (x == std::string::npos) throw ConfigError("grid wants `AxB`");
        return make_grid(static_cast<NodeId>(parse_n(params.substr(0, x))),
                         static_cast<NodeId>(parse_n(params.substr(x + 1))));
    }
    throw ConfigError("unknown generator `" + kind + "`");
}

GraphStats stats(const Graph& g) {
    NodeId n = g.node_count();
    GraphStats st{n, g.edge_count(), 0, 0, 0.0};
    st.min_degree = std::numeric_limits<int>::max();
    st.max_degree = 0;
    for (NodeId v = 0; v < n; ++v) {
        st.min_degree = std::min(st.min_degree, g.degree(v));
        st.max_degree = std::max(st.max_degree, g.degree(v));
    }
    if (n == 1) st.min_degree = 0;
    st.diameter = eccentricity_max(g);
    return st;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (const Edge& e : g.neighbors(v)) {
            if (v >= e.to) continue;
            out << g.external_id(v) << ' ' << g.external_id(e.to);
            if (g.is_weighted()) out << ' ' << e.length;
            out << '\n';
        }
    }
}

}  // namespace sstress
