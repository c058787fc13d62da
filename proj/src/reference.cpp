#include "sstress/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kernels.hpp"
#include "sstress/shortest_paths.hpp"

namespace sstress::reference {

PivotDistances mssp(const Graph& g, std::vector<NodeId> pivots) {
    if (pivots.empty()) throw ConfigError("pivot set must be non-empty");
    NodeId n = g.node_count();
    PivotDistances pd;
    pd.n = n;
    pd.pivots = std::move(pivots);
    pd.dist.resize(pd.k() * static_cast<std::size_t>(n));
    for (std::size_t p = 0; p < pd.k(); ++p)
        sssp_row(g, pd.pivots[p],
                 {pd.dist.data() + p * static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
    for (double d : pd.dist)
        if (d == kInfDist) throw ValidationError("graph must be connected");
    return pd;
}

double eccentricity_max(const Graph& g) {
    NodeId n = g.node_count();
    std::vector<double> row(n);
    double best = 0;
    for (NodeId s = 0; s < n; ++s) {
        sssp_row(g, s, row);
        for (double d : row)
            if (d != kInfDist) best = std::max(best, d);
    }
    return best;
}

double full_stress_value(const TriDistances& dm, const Layout& x) {
    NodeId n = dm.size();
    std::vector<double> row_sum(n);
    for (NodeId i = 0; i < n; ++i) row_sum[i] = detail::full_stress_row(dm, x, i);
    double total = 0;
    for (NodeId i = 0; i < n; ++i) total += row_sum[i];
    return total;
}

double sparse_stress_value(const Graph& g, const PivotDistances& pd, const Regions& regions,
                           const Layout& x) {
    NodeId n = g.node_count();
    std::vector<double> node_sum(n);
    std::vector<char> is_neighbor(n, 0);
    for (NodeId i = 0; i < n; ++i)
        node_sum[i] = detail::sparse_stress_node(g, pd, regions, x, i, is_neighbor);
    double total = 0;
    for (NodeId i = 0; i < n; ++i) total += node_sum[i];
    return total;
}

StressSums stress_sums(const Graph& g, const Layout& x) {
    NodeId n = g.node_count();
    std::vector<double> row(n);
    StressSums total;
    for (NodeId i = 0; i < n; ++i) {
        sssp_row(g, i, row);
        StressSums local = detail::stress_sums_row(x, row.data(), i, n, true);
        total.w_drawn2 += local.w_drawn2;
        total.w_cross += local.w_cross;
        total.w_target2 += local.w_target2;
        total.pairs += local.pairs;
    }
    return total;
}

std::vector<std::pair<NodeId, NodeId>> gabriel_graph(const Layout& x) {
    NodeId n = x.node_count();
    if (n < 2) throw ValidationError("gabriel graph needs at least two points");
    int dim = x.dim();
    double same_threshold = 1e-12 * bbox_diagonal(x);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (x.distance(i, j) < same_threshold) {
                edges.emplace_back(i, j);
                continue;
            }
            bool blocked = false;
            for (NodeId z = 0; z < n && !blocked; ++z) {
                if (z == i || z == j) continue;
                double dot = 0;
                for (int d = 0; d < dim; ++d)
                    dot += (x(z, d) - x(i, d)) * (x(z, d) - x(j, d));
                blocked = dot < 0;
            }
            if (!blocked) edges.emplace_back(i, j);
        }
    }
    return edges;
}

std::vector<double> gabriel_jaccard(const Layout& ref, const Layout& cmp, int max_hops,
                                    Aggregate agg) {
    NodeId n = ref.node_count();
    if (cmp.node_count() != n) throw ValidationError("layouts must share the node set");
    if (max_hops < 1) throw ConfigError("max hop count must be >= 1");
    auto ref_adj = detail::adjacency(n, reference::gabriel_graph(ref));
    auto cmp_adj = detail::adjacency(n, reference::gabriel_graph(cmp));
    std::vector<int> ref_hops(n), cmp_hops(n);
    std::vector<std::vector<double>> per_node(n, std::vector<double>(max_hops));
    for (NodeId v = 0; v < n; ++v) {
        detail::hop_bfs(ref_adj, v, ref_hops);
        detail::hop_bfs(cmp_adj, v, cmp_hops);
        for (int k = 1; k <= max_hops; ++k) {
            std::size_t inter = 0, uni = 0;
            for (NodeId u = 0; u < n; ++u) {
                if (u == v) continue;
                bool in_ref = ref_hops[u] >= 0 && ref_hops[u] <= k;
                bool in_cmp = cmp_hops[u] >= 0 && cmp_hops[u] <= k;
                inter += in_ref && in_cmp;
                uni += in_ref || in_cmp;
            }
            per_node[v][k - 1] =
                uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
        }
    }
    std::vector<double> curve(max_hops);
    std::vector<double> column(n);
    for (int k = 0; k < max_hops; ++k) {
        for (NodeId v = 0; v < n; ++v) column[v] = per_node[v][k];
        curve[k] = detail::aggregate_values(column, agg);
    }
    return curve;
}

std::vector<double> hull_error(const Graph& g, const Layout& x, int max_hops, Aggregate agg) {
    if (x.dim() != 2) throw ConfigError("hull error is defined for 2-d layouts");
    if (max_hops < 1) throw ConfigError("max hop count must be >= 1");
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    NodeId n = g.node_count();
    std::vector<std::vector<double>> per_node(n, std::vector<double>(max_hops, kNaN));
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId v = 0; v < n; ++v)
        for (const Edge& e : g.neighbors(v)) adj[v].push_back(e.to);
    std::vector<int> hops(n);
    for (NodeId v = 0; v < n; ++v) {
        detail::hop_bfs(adj, v, hops);
        for (int k = 1; k <= max_hops; ++k) {
            std::vector<detail::Point> ball;
            std::size_t ball_size = 0;
            for (NodeId u = 0; u < n; ++u)
                if (hops[u] >= 0 && hops[u] <= k) {
                    ball.push_back({x(u, 0), x(u, 1)});
                    ++ball_size;
                }
            if (ball_size == static_cast<std::size_t>(n)) continue;  // denominator 0
            auto hull = detail::convex_hull(std::move(ball));
            std::size_t inside = 0;
            for (NodeId u = 0; u < n; ++u) {
                if (hops[u] >= 0 && hops[u] <= k) continue;
                if (detail::inside_or_on(hull, {x(u, 0), x(u, 1)})) ++inside;
            }
            per_node[v][k - 1] = static_cast<double>(inside) / static_cast<double>(n - ball_size);
        }
    }
    std::vector<double> curve(max_hops, kNaN);
    std::vector<double> column;
    for (int k = 0; k < max_hops; ++k) {
        column.clear();
        for (NodeId v = 0; v < n; ++v)
            if (!std::isnan(per_node[v][k])) column.push_back(per_node[v][k]);
        curve[k] = detail::aggregate_values(column, agg);
    }
    return curve;
}

std::vector<HistBin> error_histogram(const Graph& g, const Layout& x, int bins) {
    if (bins < 1) throw ConfigError("bin count must be >= 1");
    NodeId n = g.node_count();
    std::vector<double> row(n);
    std::vector<std::pair<double, double>> samples;
    for (NodeId i = 0; i < n; ++i) {
        sssp_row(g, i, row);
        for (NodeId j = i + 1; j < n; ++j)
            samples.emplace_back(row[j], x.distance(i, j) - row[j]);
    }
    return detail::bin_errors(samples, bins, !g.is_weighted());
}

}  // namespace sstress::reference
