#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sstress/errors.hpp"

namespace sstress {

using NodeId = std::int32_t;

struct Edge {
    NodeId to;
    double length;
};

// Immutable simple undirected graph with positive edge lengths. Node ids are
// dense 0-based integers; original input ids are kept for reporting. CSR
// adjacency, sorted by neighbor id.
class Graph {
public:
    // edges: each undirected edge once, as (u, v, length) with u != v.
    Graph(NodeId node_count, std::vector<std::int64_t> external_ids,
          const std::vector<std::tuple<NodeId, NodeId, double>>& edges);

    NodeId node_count() const { return n_; }
    std::size_t edge_count() const { return m_; }
    bool is_weighted() const { return weighted_; }

    std::span<const Edge> neighbors(NodeId v) const {
        return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
    }
    int degree(NodeId v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }

    std::int64_t external_id(NodeId v) const { return external_ids_[v]; }
    const std::vector<std::int64_t>& external_ids() const { return external_ids_; }

    bool has_edge(NodeId u, NodeId v) const;
    double total_edge_length() const;
    bool is_connected() const;

private:
    NodeId n_;
    std::size_t m_;
    bool weighted_;
    std::vector<std::size_t> offsets_;
    std::vector<Edge> edges_;
    std::vector<std::int64_t> external_ids_;
};

// Collects raw (possibly duplicated) input edges, compacts ids by first
// appearance, drops self-loops and keeps the first length of duplicates.
class GraphBuilder {
public:
    void add_node(std::int64_t external_id);
    void add_edge(std::int64_t u, std::int64_t v, double length, long line = 0);
    Graph build() const;

private:
    NodeId intern(std::int64_t external_id);

    std::vector<std::int64_t> external_ids_;
    std::vector<std::pair<std::int64_t, NodeId>> id_map_;  // sorted on demand
    bool map_dirty_ = false;
    std::vector<std::tuple<NodeId, NodeId, double>> edges_;
};

// `u v [length]` per line, `#` comments. Missing length defaults to 1.
Graph parse_edge_list(std::istream& in);

// MatrixMarket coordinate format, used as an unweighted pattern: entries
// become length-1 edges, diagonal dropped, general matrices symmetrized.
Graph parse_matrix_market(std::istream& in);

// Connected component with the most nodes; ties go to the component whose
// smallest original id is smallest. Ids are recompacted.
Graph largest_component(const Graph& g);

Graph make_path(NodeId n);
Graph make_cycle(NodeId n);
Graph make_grid(NodeId rows, NodeId cols);
Graph make_complete_binary_tree(int depth);
Graph make_star(NodeId leaves);

// `kind:params` spec, e.g. "path:5", "grid:100x100", "btree:9", "star:4".
Graph make_generated(const std::string& spec);

struct GraphStats {
    NodeId n;
    std::size_t m;
    int min_degree;
    int max_degree;
    double diameter;  // weighted when the graph is
};

// Exact stats via one shortest-path run per node; meant for small graphs.
GraphStats stats(const Graph& g);

void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace sstress
