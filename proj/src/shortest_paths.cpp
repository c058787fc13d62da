#include "sstress/shortest_paths.hpp"

#include <algorithm>
#include <queue>

namespace sstress {

namespace {

void bfs_row(const Graph& g, NodeId source, std::span<double> out) {
    std::fill(out.begin(), out.end(), kInfDist);
    std::vector<NodeId> frontier{source}, next;
    out[source] = 0;
    double level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (NodeId v : frontier) {
            for (const Edge& e : g.neighbors(v)) {
                if (out[e.to] == kInfDist) {
                    out[e.to] = level;
                    next.push_back(e.to);
                }
            }
        }
        frontier.swap(next);
    }
}

void dijkstra_row(const Graph& g, NodeId source, std::span<double> out) {
    std::fill(out.begin(), out.end(), kInfDist);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    out[source] = 0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > out[v]) continue;
        for (const Edge& e : g.neighbors(v)) {
            double nd = d + e.length;
            if (nd < out[e.to]) {
                out[e.to] = nd;
                heap.emplace(nd, e.to);
            }
        }
    }
}

}  // namespace

void sssp_row(const Graph& g, NodeId source, std::span<double> out) {
    if (g.is_weighted())
        dijkstra_row(g, source, out);
    else
        bfs_row(g, source, out);
}

std::vector<std::pair<NodeId, double>> sssp_within(const Graph& g, NodeId source, double radius) {
    std::vector<std::pair<NodeId, double>> result;
    std::vector<double> dist(g.node_count(), kInfDist);
    if (g.is_weighted()) {
        using Item = std::pair<double, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[source] = 0;
        heap.emplace(0.0, source);
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d > dist[v]) continue;
            result.emplace_back(v, d);
            for (const Edge& e : g.neighbors(v)) {
                double nd = d + e.length;
                if (nd <= radius && nd < dist[e.to]) {
                    dist[e.to] = nd;
                    heap.emplace(nd, e.to);
                }
            }
        }
    } else {
        std::vector<NodeId> frontier{source}, next;
        dist[source] = 0;
        result.emplace_back(source, 0.0);
        double level = 0;
        while (!frontier.empty() && level + 1.0 <= radius) {
            ++level;
            next.clear();
            for (NodeId v : frontier) {
                for (const Edge& e : g.neighbors(v)) {
                    if (dist[e.to] == kInfDist) {
                        dist[e.to] = level;
                        result.emplace_back(e.to, level);
                        next.push_back(e.to);
                    }
                }
            }
            frontier.swap(next);
        }
    }
    return result;
}

double eccentricity_max(const Graph& g) {
    NodeId n = g.node_count();
    double best = 0;
#pragma omp parallel
    {
        std::vector<double> row(n);
        double local = 0;
#pragma omp for schedule(dynamic, 16) nowait
        for (NodeId s = 0; s < n; ++s) {
            sssp_row(g, s, row);
            for (double d : row)
                if (d != kInfDist) local = std::max(local, d);
        }
#pragma omp critical
        best = std::max(best, local);
    }
    return best;
}

DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.node_count()) {
    rows_.resize(static_cast<std::size_t>(n_) * n_);
#pragma omp parallel for schedule(dynamic, 4)
    for (NodeId s = 0; s < n_; ++s)
        sssp_row(g, s, {rows_.data() + static_cast<std::size_t>(s) * n_, static_cast<std::size_t>(n_)});
}

}  // namespace sstress
