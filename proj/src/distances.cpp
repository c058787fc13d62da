#include "sstress/distances.hpp"

#include <algorithm>
#include <utility>

#include "sstress/shortest_paths.hpp"

namespace sstress {

PivotDistances mssp(const Graph& g, std::vector<NodeId> pivots) {
    if (pivots.empty()) throw ConfigError("pivot set must be non-empty");
    NodeId n = g.node_count();
    {
        std::vector<NodeId> sorted = pivots;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.front() < 0 || sorted.back() >= n)
            throw ConfigError("pivot id out of range");
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ConfigError("duplicate pivot");
    }
    PivotDistances pd;
    pd.n = n;
    pd.pivots = std::move(pivots);
    pd.dist.resize(pd.k() * static_cast<std::size_t>(n));
    std::int64_t k = static_cast<std::int64_t>(pd.k());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t p = 0; p < k; ++p)
        sssp_row(g, pd.pivots[p],
                 {pd.dist.data() + p * static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
    for (double d : pd.dist)
        if (d == kInfDist) throw ValidationError("graph must be connected");
    return pd;
}

Regions build_regions(const PivotDistances& pd) {
    NodeId n = pd.n;
    std::size_t k = pd.k();
    Regions r;
    r.owner.assign(n, -1);
    r.members.resize(k);
    r.sorted_member_dist.resize(k);
    std::vector<std::size_t> size(k, 0);
    for (std::size_t pi = 0; pi < k; ++pi) {
        r.owner[pd.pivots[pi]] = static_cast<NodeId>(pi);
        size[pi] = 1;
    }
    std::vector<std::pair<double, NodeId>> order;  // (min pivot dist, node)
    order.reserve(n - k);
    for (NodeId v = 0; v < n; ++v) {
        if (r.owner[v] >= 0) continue;
        double min_d = pd.d(0, v);
        for (std::size_t pi = 1; pi < k; ++pi) min_d = std::min(min_d, pd.d(pi, v));
        order.emplace_back(min_d, v);
    }
    std::sort(order.begin(), order.end());
    for (auto [min_d, v] : order) {
        std::size_t best = k;
        for (std::size_t pi = 0; pi < k; ++pi) {
            if (pd.d(pi, v) != min_d) continue;
            if (best == k || size[pi] < size[best]) best = pi;  // strict: ties keep lowest index
        }
        r.owner[v] = static_cast<NodeId>(best);
        ++size[best];
    }
    for (NodeId v = 0; v < n; ++v) r.members[r.owner[v]].push_back(v);
    for (std::size_t pi = 0; pi < k; ++pi) {
        auto& dists = r.sorted_member_dist[pi];
        dists.reserve(r.members[pi].size());
        for (NodeId v : r.members[pi]) dists.push_back(pd.d(pi, v));
        std::sort(dists.begin(), dists.end());
    }
    return r;
}

std::size_t closeness_count(NodeId i, std::size_t p_idx, const PivotDistances& pd,
                            const Regions& regions) {
    const auto& dists = regions.sorted_member_dist[p_idx];
    double threshold = pd.d(p_idx, i) / 2;
    return static_cast<std::size_t>(
        std::upper_bound(dists.begin(), dists.end(), threshold) - dists.begin());
}

double adapted_weight(NodeId i, std::size_t p_idx, const PivotDistances& pd,
                      const Regions& regions) {
    double d = pd.d(p_idx, i);
    if (d <= 0) throw ValidationError("adapted weight undefined at zero distance");
    double s = static_cast<double>(closeness_count(i, p_idx, pd, regions));
    return s / (d * d);
}

}  // namespace sstress
