#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "sstress/graph.hpp"

namespace sstress {

constexpr double kInfDist = std::numeric_limits<double>::infinity();

// Distances from `source` to every node, kInfDist where unreachable.
// BFS on unit-length graphs, Dijkstra otherwise. `out` must have n entries.
void sssp_row(const Graph& g, NodeId source, std::span<double> out);

// Nodes within distance <= radius of `source` (source included), as
// (node, distance) pairs in visit order.
std::vector<std::pair<NodeId, double>> sssp_within(const Graph& g, NodeId source, double radius);

// Largest finite eccentricity; equals the diameter on connected graphs.
double eccentricity_max(const Graph& g);

// Dense all-pairs shortest paths, row-major. Rows are filled in parallel;
// each row is an independent single-source run, so the result does not
// depend on the thread count.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const Graph& g);

    double operator()(NodeId i, NodeId j) const { return rows_[static_cast<std::size_t>(i) * n_ + j]; }
    std::span<const double> row(NodeId i) const {
        return {rows_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
    }
    NodeId size() const { return n_; }

private:
    NodeId n_;
    std::vector<double> rows_;
};

}  // namespace sstress
