#include "sstress/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "kernels.hpp"
#include "sstress/rng.hpp"
#include "sstress/shortest_paths.hpp"

namespace sstress {

TriDistances::TriDistances(const Graph& g) : n_(g.node_count()) {
    tri_.resize(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
#pragma omp parallel
    {
        std::vector<double> row(n_);
#pragma omp for schedule(dynamic, 4)
        for (NodeId i = 1; i < n_; ++i) {
            sssp_row(g, i, row);
            std::size_t off = static_cast<std::size_t>(i) * (i - 1) / 2;
            for (NodeId j = 0; j < i; ++j) tri_[off + j] = row[j];
        }
    }
    for (double d : tri_)
        if (d == kInfDist) throw ValidationError("graph must be connected");
}

double relative_positional_change(const Layout& prev, const Layout& next) {
    double diag = bbox_diagonal(prev);
    if (diag <= 0) return std::numeric_limits<double>::infinity();
    double max_disp = 0;
    for (NodeId v = 0; v < prev.node_count(); ++v)
        max_disp = std::max(max_disp, euclid(prev.row(v), next.row(v)));
    return max_disp / diag;
}

namespace {

constexpr double kCoincident = 1e-9;
constexpr int kMaxDim = 3;

struct TermAccum {
    double num[kMaxDim] = {0, 0, 0};
    double den = 0;
};

void hashed_unit_direction(NodeId i, NodeId j, int dim, double* dir) {
    std::uint64_t state = hash_combine(
        0x64697265637469ULL,
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
            static_cast<std::uint32_t>(j));
    double norm2 = 0;
    while (norm2 < 1e-4) {
        norm2 = 0;
        for (int d = 0; d < dim; ++d) {
            dir[d] = (splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
            norm2 += dir[d] * dir[d];
        }
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (int d = 0; d < dim; ++d) dir[d] *= inv;
}

// One majorization term: node i pulled toward distance `target` from j.
// Out of line so every solver accumulates with the identical instruction
// sequence, which keeps the k = n sparse sweep bitwise equal to the full one.
__attribute__((noinline)) void add_term(TermAccum& acc, const double* xi, const double* xj,
                                        int dim, double w, double target, NodeId i, NodeId j) {
    double delta[kMaxDim];
    double dist2 = 0;
    for (int d = 0; d < dim; ++d) {
        delta[d] = xi[d] - xj[d];
        dist2 += delta[d] * delta[d];
    }
    double dist = std::sqrt(dist2);
    if (dist < kCoincident) {
        double dir[kMaxDim];
        hashed_unit_direction(i, j, dim, dir);
        for (int d = 0; d < dim; ++d) acc.num[d] += w * (xj[d] + target * dir[d]);
    } else {
        for (int d = 0; d < dim; ++d) acc.num[d] += w * (xj[d] + target * (delta[d] / dist));
    }
    acc.den += w;
}

double term_stress(double dist, double w, double target) {
    double diff = dist - target;
    return w * diff * diff;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int resolve_iters(const SolverConfig& cfg, int fallback) {
    if (cfg.max_iters < 0) throw ConfigError("max_iters must be >= 1");
    return cfg.max_iters == 0 ? fallback : cfg.max_iters;
}

// Shared sweep-and-trace driver; Sweep mutates the layout in place,
// Objective evaluates the solver's own stress functional.
template <typename Sweep, typename Objective>
SolveResult run_sweeps(const Layout& x0, int max_iters, double eps, Sweep sweep,
                       Objective objective) {
    auto start = Clock::now();
    SolveResult res;
    res.layout = x0;
    res.trace.push_back(
        {0, objective(res.layout), std::numeric_limits<double>::infinity(), ms_since(start)});
    Layout prev = res.layout;
    for (int it = 1; it <= max_iters; ++it) {
        sweep(res.layout);
        double change = relative_positional_change(prev, res.layout);
        res.trace.push_back({it, objective(res.layout), change, ms_since(start)});
        res.sweeps = it;
        if (change <= eps) {
            res.converged = true;
            break;
        }
        prev = res.layout;
    }
    return res;
}

}  // namespace

double full_stress_value(const TriDistances& dm, const Layout& x) {
    NodeId n = dm.size();
    std::vector<double> row_sum(n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (NodeId i = 0; i < n; ++i) row_sum[i] = detail::full_stress_row(dm, x, i);
    double total = 0;
    for (NodeId i = 0; i < n; ++i) total += row_sum[i];
    return total;
}

double edge_stress_value(const Graph& g, const Layout& x) {
    double total = 0;
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (const Edge& e : g.neighbors(i)) {
            if (i >= e.to) continue;
            total += term_stress(x.distance(i, e.to), 1.0 / (e.length * e.length), e.length);
        }
    return total;
}

double sparse_stress_value(const Graph& g, const PivotDistances& pd, const Regions& regions,
                           const Layout& x) {
    NodeId n = g.node_count();
    std::vector<double> node_sum(n, 0.0);
#pragma omp parallel
    {
        std::vector<char> is_neighbor(n, 0);
#pragma omp for schedule(dynamic, 64)
        for (NodeId i = 0; i < n; ++i)
            node_sum[i] = detail::sparse_stress_node(g, pd, regions, x, i, is_neighbor);
    }
    double total = 0;
    for (NodeId i = 0; i < n; ++i) total += node_sum[i];
    return total;
}

SolveResult solve_full_stress(const Graph& g, const TriDistances& dm, const Layout& x0,
                              const SolverConfig& cfg) {
    if (!g.is_connected()) throw ValidationError("graph must be connected");
    NodeId n = g.node_count();
    int dim = x0.dim();
    if (dim > kMaxDim) throw ConfigError("layouts support up to 3 dimensions");
    int max_iters = resolve_iters(cfg, 500);
    std::vector<char> is_neighbor(n, 0);
    auto sweep = [&](Layout& x) {
        for (NodeId i = 0; i < n; ++i) {
            TermAccum acc;
            const double* xi = x.row(i).data();
            for (const Edge& e : g.neighbors(i)) {
                is_neighbor[e.to] = 1;
                double d = dm(i, e.to);
                add_term(acc, xi, x.row(e.to).data(), dim, 1.0 / (d * d), d, i, e.to);
            }
            for (NodeId j = 0; j < n; ++j) {
                if (j == i || is_neighbor[j]) continue;
                double d = dm(i, j);
                add_term(acc, xi, x.row(j).data(), dim, 1.0 / (d * d), d, i, j);
            }
            for (const Edge& e : g.neighbors(i)) is_neighbor[e.to] = 0;
            if (acc.den > 0)
                for (int d = 0; d < dim; ++d) x(i, d) = acc.num[d] / acc.den;
        }
    };
    return run_sweeps(x0, max_iters, cfg.eps, sweep,
                      [&](const Layout& x) { return full_stress_value(dm, x); });
}

SolveResult solve_full_stress(const Graph& g, const Layout& x0, const SolverConfig& cfg) {
    TriDistances dm(g);
    return solve_full_stress(g, dm, x0, cfg);
}

SolveResult solve_sparse_stress(const Graph& g, const PivotDistances& pd, const Regions& regions,
                                const Layout& x0, const SolverConfig& cfg) {
    NodeId n = g.node_count();
    int dim = x0.dim();
    if (dim > kMaxDim) throw ConfigError("layouts support up to 3 dimensions");
    if (pd.k() == 0) throw ConfigError("pivot set must be non-empty");
    int max_iters = resolve_iters(cfg, 200);
    std::size_t k = pd.k();
    std::vector<char> is_neighbor(n, 0);
    auto sweep = [&](Layout& x) {
        for (NodeId i = 0; i < n; ++i) {
            TermAccum acc;
            const double* xi = x.row(i).data();
            for (const Edge& e : g.neighbors(i)) {
                is_neighbor[e.to] = 1;
                add_term(acc, xi, x.row(e.to).data(), dim, 1.0 / (e.length * e.length), e.length,
                         i, e.to);
            }
            for (std::size_t p = 0; p < k; ++p) {
                NodeId pj = pd.pivots[p];
                if (pj == i || is_neighbor[pj]) continue;
                double d = pd.d(p, i);
                double s = static_cast<double>(closeness_count(i, p, pd, regions));
                add_term(acc, xi, x.row(pj).data(), dim, s / (d * d), d, i, pj);
            }
            for (const Edge& e : g.neighbors(i)) is_neighbor[e.to] = 0;
            if (acc.den > 0)
                for (int d = 0; d < dim; ++d) x(i, d) = acc.num[d] / acc.den;
        }
    };
    return run_sweeps(x0, max_iters, cfg.eps, sweep, [&](const Layout& x) {
        return sparse_stress_value(g, pd, regions, x);
    });
}

SolveResult solve_sparse_stress(const Graph& g, const std::vector<NodeId>& pivots,
                                const Layout& x0, const SolverConfig& cfg) {
    PivotDistances pd = mssp(g, pivots);
    Regions regions = build_regions(pd);
    return solve_sparse_stress(g, pd, regions, x0, cfg);
}

SolveResult solve_1_stress(const Graph& g, const Layout& x0, const SolverConfig& cfg) {
    if (!g.is_connected()) throw ValidationError("graph must be connected");
    NodeId n = g.node_count();
    int dim = x0.dim();
    if (dim > kMaxDim) throw ConfigError("layouts support up to 3 dimensions");
    int max_iters = resolve_iters(cfg, 200);
    auto sweep = [&](Layout& x) {
        for (NodeId i = 0; i < n; ++i) {
            TermAccum acc;
            const double* xi = x.row(i).data();
            for (const Edge& e : g.neighbors(i))
                add_term(acc, xi, x.row(e.to).data(), dim, 1.0 / (e.length * e.length), e.length,
                         i, e.to);
            if (acc.den > 0)
                for (int d = 0; d < dim; ++d) x(i, d) = acc.num[d] / acc.den;
        }
    };
    return run_sweeps(x0, max_iters, cfg.eps, sweep,
                      [&](const Layout& x) { return edge_stress_value(g, x); });
}

}  // namespace sstress
