#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/graph.hpp"
#include "sstress/layout.hpp"

namespace sstress {

// Half-triangular all-pairs shortest-path store for the full model,
// n(n-1)/2 doubles. Rows are filled by parallel single-source runs.
class TriDistances {
public:
    explicit TriDistances(const Graph& g);

    double operator()(NodeId i, NodeId j) const {
        if (i == j) return 0;
        auto [lo, hi] = std::minmax(i, j);
        return tri_[static_cast<std::size_t>(hi) * (hi - 1) / 2 + lo];
    }
    NodeId size() const { return n_; }
    std::size_t stored() const { return tri_.size(); }

private:
    NodeId n_;
    std::vector<double> tri_;
};

struct SolverConfig {
    int max_iters = 0;     // 0 picks the per-solver default: full 500, others 200
    double eps = 1e-4;     // threshold on relative positional change
    std::uint64_t seed = 0;
};

struct TraceRow {
    int sweep;               // 0 is the initial layout
    double stress;           // solver's own objective after this sweep
    double relative_change;  // +inf for sweep 0
    double elapsed_ms;       // cumulative since solve start
};

struct SolveResult {
    Layout layout;
    std::vector<TraceRow> trace;
    int sweeps = 0;
    bool converged = false;  // reached eps before the iteration cap
};

// max over nodes of the displacement norm divided by the bounding-box
// diagonal of `prev`; +inf when that diagonal is zero.
double relative_positional_change(const Layout& prev, const Layout& next);

// Localized stress majorization over all node pairs, Gauss-Seidel updates in
// ascending id order. Near-coincident pairs (distance < 1e-9) fall back to a
// deterministic unit direction hashed from the pair.
SolveResult solve_full_stress(const Graph& g, const TriDistances& dm, const Layout& x0,
                              const SolverConfig& cfg = {});
SolveResult solve_full_stress(const Graph& g, const Layout& x0, const SolverConfig& cfg = {});

// Majorization restricted to edge terms plus (node, pivot) terms with
// region-adapted weights; with k = n and unit edge lengths the sweep is
// term-for-term identical to the full solver.
SolveResult solve_sparse_stress(const Graph& g, const PivotDistances& pd, const Regions& regions,
                                const Layout& x0, const SolverConfig& cfg = {});
SolveResult solve_sparse_stress(const Graph& g, const std::vector<NodeId>& pivots,
                                const Layout& x0, const SolverConfig& cfg = {});

// Majorization over edge terms only.
SolveResult solve_1_stress(const Graph& g, const Layout& x0, const SolverConfig& cfg = {});

// Objective values. Evaluation parallelizes over nodes with a fixed-order
// merge, so results do not depend on the thread count.
double full_stress_value(const TriDistances& dm, const Layout& x);
double sparse_stress_value(const Graph& g, const PivotDistances& pd, const Regions& regions,
                           const Layout& x);
double edge_stress_value(const Graph& g, const Layout& x);

}  // namespace sstress
