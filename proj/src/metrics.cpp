#include "sstress/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "kernels.hpp"
#include "sstress/eigen.hpp"
#include "sstress/io.hpp"

namespace sstress {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<NodeId> pick_sources(NodeId n, std::size_t count, Rng& rng) {
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(ids);
    ids.resize(std::min(count, ids.size()));
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

StressSums stress_sums(const Graph& g, const Layout& x) {
    NodeId n = g.node_count();
    std::vector<StressSums> partial(n);
#pragma omp parallel
    {
        std::vector<double> row(n);
#pragma omp for schedule(dynamic, 16)
        for (NodeId i = 0; i < n; ++i) {
            sssp_row(g, i, row);
            partial[i] = detail::stress_sums_row(x, row.data(), i, n, true);
        }
    }
    StressSums total;
    for (const StressSums& p : partial) {
        total.w_drawn2 += p.w_drawn2;
        total.w_cross += p.w_cross;
        total.w_target2 += p.w_target2;
        total.pairs += p.pairs;
    }
    return total;
}

StressSums stress_sums_sampled(const Graph& g, const Layout& x, std::size_t sources, Rng& rng) {
    NodeId n = g.node_count();
    auto picked = pick_sources(n, sources, rng);
    std::vector<StressSums> partial(picked.size());
#pragma omp parallel
    {
        std::vector<double> row(n);
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(picked.size()); ++s) {
            NodeId i = picked[s];
            sssp_row(g, i, row);
            partial[s] = detail::stress_sums_row(x, row.data(), i, n, false);
        }
    }
    StressSums total;
    for (const StressSums& p : partial) {
        total.w_drawn2 += p.w_drawn2;
        total.w_cross += p.w_cross;
        total.w_target2 += p.w_target2;
        total.pairs += p.pairs;
    }
    return total;
}

double raw_stress(const StressSums& s) { return s.w_drawn2 - 2 * s.w_cross + s.w_target2; }

RescaleResult optimal_rescale(const StressSums& s) {
    if (!(s.w_drawn2 > 0)) throw ValidationError("cannot rescale a fully coincident layout");
    double scale = s.w_cross / s.w_drawn2;
    if (!(scale > 0)) throw ValidationError("optimal scale is not positive");
    return {scale, s.w_target2 - s.w_cross * s.w_cross / s.w_drawn2};
}

double normalized_stress(const StressSums& s) {
    if (s.pairs == 0) throw ValidationError("no pairs to normalize over");
    return optimal_rescale(s).stress / static_cast<double>(s.pairs);
}

StressSums stress_sums(const Layout& x, const DistanceMatrix& d) {
    if (x.node_count() != d.size()) throw ValidationError("layout and distances disagree on n");
    StressSums total;
    for (NodeId i = 0; i < d.size(); ++i)
        for (NodeId j = i + 1; j < d.size(); ++j)
            total.add(1.0 / (d(i, j) * d(i, j)), d(i, j), x.distance(i, j));
    return total;
}

double stress_value(const Layout& x, const DistanceMatrix& d) {
    return raw_stress(stress_sums(x, d));
}

double stress_value(const Layout& x, const DistanceMatrix& d, const std::vector<double>& w) {
    NodeId n = d.size();
    if (x.node_count() != n) throw ValidationError("layout and distances disagree on n");
    if (w.size() != static_cast<std::size_t>(n) * n) throw ValidationError("weight matrix shape");
    double total = 0;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            double diff = x.distance(i, j) - d(i, j);
            total += w[static_cast<std::size_t>(i) * n + j] * diff * diff;
        }
    return total;
}

double procrustes_statistic(const Layout& x, const Layout& y) {
    NodeId n = x.node_count();
    int dim = x.dim();
    if (y.node_count() != n || y.dim() != dim)
        throw ValidationError("procrustes inputs must share shape");
    std::vector<double> cx(dim, 0.0), cy(dim, 0.0);
    for (NodeId v = 0; v < n; ++v)
        for (int d = 0; d < dim; ++d) {
            cx[d] += x(v, d);
            cy[d] += y(v, d);
        }
    for (int d = 0; d < dim; ++d) {
        cx[d] /= n;
        cy[d] /= n;
    }
    double tr_xx = 0, tr_yy = 0;
    std::vector<double> a(static_cast<std::size_t>(dim) * dim, 0.0);  // X^T Y
    for (NodeId v = 0; v < n; ++v)
        for (int p = 0; p < dim; ++p) {
            double xv = x(v, p) - cx[p];
            tr_xx += xv * xv;
            double yv = y(v, p) - cy[p];
            tr_yy += yv * yv;
            for (int q = 0; q < dim; ++q) a[static_cast<std::size_t>(p) * dim + q] += xv * (y(v, q) - cy[q]);
        }
    bool x_degenerate = tr_xx <= 0, y_degenerate = tr_yy <= 0;
    if (x_degenerate || y_degenerate) return (x_degenerate && y_degenerate) ? 0.0 : 1.0;
    // singular values of X^T Y via the symmetric product, sign of det for
    // the proper-rotation constraint
    std::vector<double> prod(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q) {
            double sum = 0;
            for (int r = 0; r < dim; ++r)
                sum += a[static_cast<std::size_t>(p) * dim + r] * a[static_cast<std::size_t>(q) * dim + r];
            prod[static_cast<std::size_t>(p) * dim + q] = sum;
        }
    std::vector<double> vals, vecs;
    jacobi_symmetric_eigen(prod, dim, vals, vecs);
    double trace = 0, sigma_min = std::numeric_limits<double>::infinity();
    for (double lambda : vals) {
        double sigma = std::sqrt(std::max(lambda, 0.0));
        trace += sigma;
        sigma_min = std::min(sigma_min, sigma);
    }
    double det;
    if (dim == 1) {
        det = a[0];
    } else if (dim == 2) {
        det = a[0] * a[3] - a[1] * a[2];
    } else if (dim == 3) {
        det = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
              a[2] * (a[3] * a[7] - a[4] * a[6]);
    } else {
        throw ConfigError("procrustes supports up to 3 dimensions");
    }
    if (det < 0) trace -= 2 * sigma_min;
    if (trace <= 0) return 1.0;
    double r2 = 1.0 - trace * trace / (tr_xx * tr_yy);
    return std::clamp(r2, 0.0, 1.0);
}

std::vector<std::pair<NodeId, NodeId>> gabriel_graph(const Layout& x) {
    NodeId n = x.node_count();
    if (n < 2) throw ValidationError("gabriel graph needs at least two points");
    int dim = x.dim();
    double same_threshold = 1e-12 * bbox_diagonal(x);
    // uniform grid over the bounding box for disc pruning
    std::vector<double> lo(dim, 0.0);
    double cell = 0;
    int cells_per_axis = 1;
    std::vector<NodeId> cell_of(n, 0);
    std::vector<std::vector<NodeId>> buckets;
    {
        std::vector<double> hi(dim, 0.0);
        for (int d = 0; d < dim; ++d) {
            lo[d] = hi[d] = x(0, d);
            for (NodeId v = 1; v < n; ++v) {
                lo[d] = std::min(lo[d], x(v, d));
                hi[d] = std::max(hi[d], x(v, d));
            }
            cell = std::max(cell, hi[d] - lo[d]);
        }
        cells_per_axis = std::max(1, static_cast<int>(std::pow(static_cast<double>(n), 1.0 / dim)));
        cell = cell > 0 ? cell / cells_per_axis : 1.0;
        int total_cells = 1;
        for (int d = 0; d < dim; ++d) total_cells *= cells_per_axis;
        buckets.resize(total_cells);
        for (NodeId v = 0; v < n; ++v) {
            int idx = 0;
            for (int d = 0; d < dim; ++d) {
                int c = std::min(cells_per_axis - 1,
                                 static_cast<int>((x(v, d) - lo[d]) / cell));
                idx = idx * cells_per_axis + c;
            }
            cell_of[v] = idx;
            buckets[idx].push_back(v);
        }
    }
    auto blocked = [&](NodeId i, NodeId j) {
        // strict interior of the disc on diameter (i, j): (z-i).(z-j) < 0
        double mid[3], radius2 = 0;
        for (int d = 0; d < dim; ++d) {
            mid[d] = (x(i, d) + x(j, d)) / 2;
            double half = (x(i, d) - x(j, d)) / 2;
            radius2 += half * half;
        }
        double radius = std::sqrt(radius2);
        int range_lo[3], range_hi[3];
        for (int d = 0; d < dim; ++d) {
            range_lo[d] = std::clamp(static_cast<int>((mid[d] - radius - lo[d]) / cell), 0,
                                     cells_per_axis - 1);
            range_hi[d] = std::clamp(static_cast<int>((mid[d] + radius - lo[d]) / cell), 0,
                                     cells_per_axis - 1);
        }
        int idx_count = 1;
        for (int d = 0; d < dim; ++d) idx_count *= range_hi[d] - range_lo[d] + 1;
        for (int flat = 0; flat < idx_count; ++flat) {
            int rem = flat, idx = 0;
            for (int d = 0; d < dim; ++d) {
                int span = range_hi[d] - range_lo[d] + 1;
                idx = idx * cells_per_axis + range_lo[d] + rem % span;
                rem /= span;
            }
            for (NodeId z : buckets[idx]) {
                if (z == i || z == j) continue;
                double dot = 0;
                for (int d = 0; d < dim; ++d)
                    dot += (x(z, d) - x(i, d)) * (x(z, d) - x(j, d));
                if (dot < 0) return true;
            }
        }
        return false;
    };
    std::vector<std::vector<std::pair<NodeId, NodeId>>> per_i(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (x.distance(i, j) < same_threshold) {
                per_i[i].emplace_back(i, j);
                continue;
            }
            if (!blocked(i, j)) per_i[i].emplace_back(i, j);
        }
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < n; ++i)
        edges.insert(edges.end(), per_i[i].begin(), per_i[i].end());
    return edges;
}

std::vector<double> gabriel_jaccard(const Layout& ref, const Layout& cmp, int max_hops,
                                    Aggregate agg) {
    NodeId n = ref.node_count();
    if (cmp.node_count() != n) throw ValidationError("layouts must share the node set");
    if (max_hops < 1) throw ConfigError("max hop count must be >= 1");
    auto ref_adj = detail::adjacency(n, gabriel_graph(ref));
    auto cmp_adj = detail::adjacency(n, gabriel_graph(cmp));
    std::vector<std::vector<double>> per_node(n, std::vector<double>(max_hops));
#pragma omp parallel
    {
        std::vector<int> ref_hops(n), cmp_hops(n);
#pragma omp for schedule(dynamic, 8)
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
    NodeId n = g.node_count();
    std::vector<std::vector<double>> per_node(n, std::vector<double>(max_hops, kNaN));
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId v = 0; v < n; ++v)
        for (const Edge& e : g.neighbors(v)) adj[v].push_back(e.to);
#pragma omp parallel
    {
        std::vector<int> hops(n);
#pragma omp for schedule(dynamic, 8)
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
                per_node[v][k - 1] =
                    static_cast<double>(inside) / static_cast<double>(n - ball_size);
            }
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

namespace {

std::vector<HistBin> histogram_impl(const Graph& g, const Layout& x, int bins,
                                    const std::vector<NodeId>& sources, bool all_pairs) {
    NodeId n = g.node_count();
    std::vector<std::vector<std::pair<double, double>>> partial(sources.size());
#pragma omp parallel
    {
        std::vector<double> row(n);
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(sources.size()); ++s) {
            NodeId i = sources[s];
            sssp_row(g, i, row);
            auto& local = partial[s];
            NodeId j_begin = all_pairs ? i + 1 : 0;
            for (NodeId j = j_begin; j < n; ++j) {
                if (j == i) continue;
                local.emplace_back(row[j], x.distance(i, j) - row[j]);
            }
        }
    }
    std::vector<std::pair<double, double>> samples;
    for (auto& p : partial) samples.insert(samples.end(), p.begin(), p.end());
    return detail::bin_errors(samples, bins, !g.is_weighted());
}

}  // namespace

std::vector<HistBin> error_histogram(const Graph& g, const Layout& x, int bins) {
    if (bins < 1) throw ConfigError("bin count must be >= 1");
    std::vector<NodeId> sources(g.node_count());
    std::iota(sources.begin(), sources.end(), 0);
    return histogram_impl(g, x, bins, sources, true);
}

std::vector<HistBin> error_histogram_sampled(const Graph& g, const Layout& x, int bins,
                                             std::size_t sources, Rng& rng) {
    if (bins < 1) throw ConfigError("bin count must be >= 1");
    auto picked = pick_sources(g.node_count(), sources, rng);
    return histogram_impl(g, x, bins, picked, false);
}

void write_metric_report(std::ostream& out, const MetricReport& report) {
    out << "metric,key,value\n";
    out << "metric,raw_stress," << format_double(report.raw) << '\n';
    out << "metric,optimal_scale," << format_double(report.scale) << '\n';
    out << "metric,rescaled_stress," << format_double(report.rescaled) << '\n';
    out << "metric,normalized_stress," << format_double(report.normalized) << '\n';
    if (report.procrustes)
        out << "metric,procrustes," << format_double(*report.procrustes) << '\n';
    if (!report.jaccard_curve.empty() || !report.hull_curve.empty()) {
        out << "curve,name,k,value\n";
        for (std::size_t k = 0; k < report.jaccard_curve.size(); ++k)
            out << "curve,gabriel_jaccard," << (k + 1) << ','
                << format_double(report.jaccard_curve[k]) << '\n';
        for (std::size_t k = 0; k < report.hull_curve.size(); ++k)
            out << "curve,hull_error," << (k + 1) << ',' << format_double(report.hull_curve[k])
                << '\n';
    }
    if (!report.histogram.empty()) {
        out << "hist,bin_lo,bin_hi,min,p5,p25,median,p75,p95,max\n";
        for (const HistBin& b : report.histogram) {
            out << "hist," << format_double(b.lo) << ',' << format_double(b.hi) << ','
                << format_double(b.min) << ',' << format_double(b.p5) << ','
                << format_double(b.p25) << ',' << format_double(b.median) << ','
                << format_double(b.p75) << ',' << format_double(b.p95) << ','
                << format_double(b.max) << '\n';
        }
    }
}

}  // namespace sstress
