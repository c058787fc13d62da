#pragma once

#include <utility>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/graph.hpp"
#include "sstress/layout.hpp"
#include "sstress/metrics.hpp"
#include "sstress/solver.hpp"

// Helpers compiled exactly once and shared by the OpenMP kernels and their
// serial reference twins, so both sides run the identical instruction
// sequence per element and tests can require bitwise-equal results at any
// thread count.
namespace sstress::detail {

double full_stress_row(const TriDistances& dm, const Layout& x, NodeId i);

// Edge terms counted once (i < j) plus all pivot terms of node i.
// `is_neighbor` is an all-zero n-byte scratch, restored before returning.
double sparse_stress_node(const Graph& g, const PivotDistances& pd, const Regions& regions,
                          const Layout& x, NodeId i, std::vector<char>& is_neighbor);

// Pair sums for source i against targets j > i (exact mode) or all j != i
// (sampled mode); `row` holds the shortest-path distances from i.
StressSums stress_sums_row(const Layout& x, const double* row, NodeId i, NodeId n,
                           bool upper_only);

struct Point {
    double x, y;
};

double cross(const Point& o, const Point& a, const Point& b);

// Counter-clockwise hull of the distinct input points; collinear inputs
// collapse to their extreme segment, coincident inputs to one point.
std::vector<Point> convex_hull(std::vector<Point> pts);

// Boundary-inclusive membership with exact comparisons.
bool inside_or_on(const std::vector<Point>& hull, const Point& p);

std::vector<std::vector<NodeId>> adjacency(NodeId n,
                                           const std::vector<std::pair<NodeId, NodeId>>& edges);

// Unweighted hop distances from v into `hops`, -1 where unreachable.
void hop_bfs(const std::vector<std::vector<NodeId>>& adj, NodeId v, std::vector<int>& hops);

// Mean or interpolated median; NaN for an empty input. Sorts in place.
double aggregate_values(std::vector<double>& values, Aggregate agg);

double quantile_sorted(const std::vector<double>& sorted, double q);

// (target distance, drawn - target) samples into per-distance-bin summaries.
std::vector<HistBin> bin_errors(const std::vector<std::pair<double, double>>& samples, int bins,
                                bool unit_lengths);

}  // namespace sstress::detail
