#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sstress::detail {

namespace {

double term_stress(double dist, double w, double target) {
    double diff = dist - target;
    return w * diff * diff;
}

}  // namespace

double full_stress_row(const TriDistances& dm, const Layout& x, NodeId i) {
    NodeId n = dm.size();
    double sum = 0;
    for (NodeId j = i + 1; j < n; ++j) {
        double d = dm(i, j);
        sum += term_stress(x.distance(i, j), 1.0 / (d * d), d);
    }
    return sum;
}

double sparse_stress_node(const Graph& g, const PivotDistances& pd, const Regions& regions,
                          const Layout& x, NodeId i, std::vector<char>& is_neighbor) {
    double sum = 0;
    for (const Edge& e : g.neighbors(i)) {
        is_neighbor[e.to] = 1;
        if (i < e.to)
            sum += term_stress(x.distance(i, e.to), 1.0 / (e.length * e.length), e.length);
    }
    std::size_t k = pd.k();
    for (std::size_t p = 0; p < k; ++p) {
        NodeId pj = pd.pivots[p];
        if (pj == i || is_neighbor[pj]) continue;
        sum += term_stress(x.distance(i, pj), adapted_weight(i, p, pd, regions), pd.d(p, i));
    }
    for (const Edge& e : g.neighbors(i)) is_neighbor[e.to] = 0;
    return sum;
}

StressSums stress_sums_row(const Layout& x, const double* row, NodeId i, NodeId n,
                           bool upper_only) {
    StressSums local;
    for (NodeId j = upper_only ? i + 1 : 0; j < n; ++j) {
        if (j == i) continue;
        double d = row[j];
        local.add(1.0 / (d * d), d, x.distance(i, j));
    }
    return local;
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t h = 0;
    for (const Point& p : pts) {  // lower chain
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
        hull[h++] = p;
    }
    for (std::size_t i = pts.size() - 1, base = h + 1; i-- > 0;) {  // upper chain
        const Point& p = pts[i];
        while (h >= base && cross(hull[h - 2], hull[h - 1], p) <= 0) --h;
        hull[h++] = p;
    }
    hull.resize(h - 1);
    return hull;
}

namespace {

bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (cross(a, b, p) != 0) return false;
    double dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    return dot >= 0 && dot <= len2;
}

}  // namespace

bool inside_or_on(const std::vector<Point>& hull, const Point& p) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return p.x == hull[0].x && p.y == hull[0].y;
    if (hull.size() == 2) return on_segment(hull[0], hull[1], p);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < 0) return false;
    }
    return true;
}

std::vector<std::vector<NodeId>> adjacency(NodeId n,
                                           const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::vector<NodeId>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

void hop_bfs(const std::vector<std::vector<NodeId>>& adj, NodeId v, std::vector<int>& hops) {
    std::fill(hops.begin(), hops.end(), -1);
    std::vector<NodeId> frontier{v}, next;
    hops[v] = 0;
    int level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (NodeId u : frontier)
            for (NodeId w : adj[u])
                if (hops[w] < 0) {
                    hops[w] = level;
                    next.push_back(w);
                }
        frontier.swap(next);
    }
}

double aggregate_values(std::vector<double>& values, Aggregate agg) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (agg == Aggregate::mean) {
        double sum = 0;
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    }
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<HistBin> bin_errors(const std::vector<std::pair<double, double>>& samples, int bins,
                                bool unit_lengths) {
    std::vector<HistBin> out;
    if (samples.empty()) return out;
    double max_d = 0;
    for (const auto& [d, err] : samples) max_d = std::max(max_d, d);
    std::size_t bin_count;
    double width = 0;
    if (unit_lengths) {
        bin_count = static_cast<std::size_t>(max_d);
    } else {
        bin_count = static_cast<std::size_t>(bins);
        width = max_d / static_cast<double>(bins);
    }
    std::vector<std::vector<double>> by_bin(bin_count);
    for (const auto& [d, err] : samples) {
        std::size_t idx;
        if (unit_lengths) {
            idx = static_cast<std::size_t>(d) - 1;
        } else {
            idx = static_cast<std::size_t>(std::ceil(d / width));
            idx = std::min(idx > 0 ? idx - 1 : 0, bin_count - 1);
        }
        by_bin[idx].push_back(err);
    }
    for (std::size_t b = 0; b < bin_count; ++b) {
        auto& vals = by_bin[b];
        if (vals.empty()) continue;
        std::sort(vals.begin(), vals.end());
        HistBin bin;
        if (unit_lengths) {
            bin.lo = bin.hi = static_cast<double>(b + 1);
        } else {
            bin.lo = width * static_cast<double>(b);
            bin.hi = width * static_cast<double>(b + 1);
        }
        bin.count = vals.size();
        bin.min = vals.front();
        bin.max = vals.back();
        bin.p5 = quantile_sorted(vals, 0.05);
        bin.p25 = quantile_sorted(vals, 0.25);
        bin.median = quantile_sorted(vals, 0.5);
        bin.p75 = quantile_sorted(vals, 0.75);
        bin.p95 = quantile_sorted(vals, 0.95);
        out.push_back(bin);
    }
    return out;
}

}  // namespace sstress::detail
