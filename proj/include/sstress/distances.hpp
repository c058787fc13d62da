#pragma once

#include <cstddef>
#include <vector>

#include "sstress/graph.hpp"

namespace sstress {

// Shortest-path distances from each pivot to every node, row-major k x n.
struct PivotDistances {
    std::vector<NodeId> pivots;  // the set P, in sampling order
    NodeId n = 0;
    std::vector<double> dist;

    std::size_t k() const { return pivots.size(); }
    double d(std::size_t p_idx, NodeId v) const { return dist[p_idx * n + v]; }
};

// One single-source run per pivot (BFS on unit lengths, Dijkstra otherwise),
// executed in parallel. Throws if some node is unreachable.
PivotDistances mssp(const Graph& g, std::vector<NodeId> pivots);

// Partition of V into one region per pivot, each node owned by its closest
// pivot, with p in R(p).
struct Regions {
    std::vector<NodeId> owner;                           // node -> owning pivot index
    std::vector<std::vector<NodeId>> members;            // per pivot index, ascending ids
    std::vector<std::vector<double>> sorted_member_dist; // per pivot index, ascending d_jp
};

// Pivots claim themselves first; the other nodes are processed in ascending
// order of their minimum pivot distance (then node id) and join the closest
// pivot. Equally close pivots are resolved toward the currently smallest
// region, then the lowest pivot index.
Regions build_regions(const PivotDistances& pd);

// s(i,p) = |{ j in R(p) : d_jp <= d_ip / 2 }|, boundary inclusive.
std::size_t closeness_count(NodeId i, std::size_t p_idx, const PivotDistances& pd,
                            const Regions& regions);

// w'_ip = s(i,p) / d_ip^2. Requires d_ip > 0.
double adapted_weight(NodeId i, std::size_t p_idx, const PivotDistances& pd,
                      const Regions& regions);

}  // namespace sstress
