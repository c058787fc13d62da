#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "sstress/graph.hpp"

namespace sstress {

inline double euclid(std::span<const double> a, std::span<const double> b) {
    double sq = 0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

// Row-major node coordinates, node_count rows x dim columns.
class Layout {
public:
    Layout() : n_(0), dim_(0) {}
    Layout(NodeId n, int dim) : n_(n), dim_(dim), coords_(static_cast<std::size_t>(n) * dim, 0.0) {}

    NodeId node_count() const { return n_; }
    int dim() const { return dim_; }

    double& operator()(NodeId v, int d) { return coords_[static_cast<std::size_t>(v) * dim_ + d]; }
    double operator()(NodeId v, int d) const {
        return coords_[static_cast<std::size_t>(v) * dim_ + d];
    }

    std::span<double> row(NodeId v) {
        return {coords_.data() + static_cast<std::size_t>(v) * dim_, static_cast<std::size_t>(dim_)};
    }
    std::span<const double> row(NodeId v) const {
        return {coords_.data() + static_cast<std::size_t>(v) * dim_, static_cast<std::size_t>(dim_)};
    }

    double distance(NodeId a, NodeId b) const { return euclid(row(a), row(b)); }

    void scale(double factor) {
        for (double& c : coords_) c *= factor;
    }

    const std::vector<double>& data() const { return coords_; }
    std::vector<double>& data() { return coords_; }

private:
    NodeId n_;
    int dim_;
    std::vector<double> coords_;
};

// Length of the axis-aligned bounding-box diagonal; 0 when all points coincide.
inline double bbox_diagonal(const Layout& x) {
    if (x.node_count() == 0) return 0;
    double sq = 0;
    for (int d = 0; d < x.dim(); ++d) {
        double lo = x(0, d), hi = x(0, d);
        for (NodeId v = 1; v < x.node_count(); ++v) {
            lo = std::min(lo, x(v, d));
            hi = std::max(hi, x(v, d));
        }
        sq += (hi - lo) * (hi - lo);
    }
    return std::sqrt(sq);
}

// Sum of euclidean lengths over the graph's edges in the given layout.
inline double total_edge_drawn_length(const Graph& g, const Layout& x) {
    double sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (const Edge& e : g.neighbors(v))
            if (v < e.to) sum += x.distance(v, e.to);
    return sum;
}

}  // namespace sstress
