#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "sstress/graph.hpp"
#include "sstress/layout.hpp"
#include "sstress/rng.hpp"
#include "sstress/shortest_paths.hpp"

namespace sstress {

enum class Aggregate { mean, median };

// Accumulated sums over weighted pairs, enough to recover the raw stress,
// the optimal uniform rescale, and the rescaled stress:
//   raw   = w_drawn2 - 2 w_cross + w_target2
//   c*    = w_cross / w_drawn2
//   s(c*) = w_target2 - w_cross^2 / w_drawn2
struct StressSums {
    double w_drawn2 = 0;   // sum of w * drawn^2
    double w_cross = 0;    // sum of w * target * drawn
    double w_target2 = 0;  // sum of w * target^2
    std::size_t pairs = 0;

    void add(double w, double target, double drawn) {
        w_drawn2 += w * drawn * drawn;
        w_cross += w * target * drawn;
        w_target2 += w * target * target;
        ++pairs;
    }
};

// Exact sums over all node pairs with w = 1/d^2, streaming one shortest-path
// row per source; sources run in parallel and merge in id order.
StressSums stress_sums(const Graph& g, const Layout& x);

// Estimate from `sources` random source rows (all ordered pairs from each
// sampled source). Totals cover the sampled multiset; the per-pair average
// (normalized stress) stays comparable with the exact mode.
StressSums stress_sums_sampled(const Graph& g, const Layout& x, std::size_t sources, Rng& rng);

double raw_stress(const StressSums& s);

struct RescaleResult {
    double scale;
    double stress;  // stress of scale * x
};

// Closed-form best uniform scale; throws on degenerate layouts (zero drawn
// spread or nonpositive optimum).
RescaleResult optimal_rescale(const StressSums& s);

// Rescaled stress divided by the number of pairs accounted.
double normalized_stress(const StressSums& s);

// Matrix-backed variants for small graphs and tests.
double stress_value(const Layout& x, const DistanceMatrix& d);
double stress_value(const Layout& x, const DistanceMatrix& d, const std::vector<double>& w);
StressSums stress_sums(const Layout& x, const DistanceMatrix& d);

// Residual dissimilarity in [0, 1] after optimal translation, rotation and
// dilation (reflections are not in the family, so mirrored layouts score
// high). 0 means a perfect similarity match.
double procrustes_statistic(const Layout& x, const Layout& y);

// Edges (i, j) with i < j, lexicographic: pair present iff no third point
// lies strictly inside the open disc on diameter (x_i, x_j), plus an edge
// for every pair closer than 1e-12 of the bounding-box diagonal.
std::vector<std::pair<NodeId, NodeId>> gabriel_graph(const Layout& x);

// Per k in 1..max_hops, aggregate over nodes of the Jaccard coefficient
// between the <=k-hop neighborhoods of the two Gabriel graphs.
std::vector<double> gabriel_jaccard(const Layout& ref, const Layout& cmp, int max_hops,
                                    Aggregate agg = Aggregate::mean);

// Per k in 1..max_hops, aggregate over nodes v of the fraction of
// non-neighborhood nodes drawn inside or on the convex hull of v's <=k-hop
// neighborhood (hop counts in g). NaN where every denominator is zero.
std::vector<double> hull_error(const Graph& g, const Layout& x, int max_hops,
                               Aggregate agg = Aggregate::mean);

struct HistBin {
    double lo = 0, hi = 0;
    std::size_t count = 0;
    double min = 0, p5 = 0, p25 = 0, median = 0, p75 = 0, p95 = 0, max = 0;
};

// Distribution of drawn-minus-target error per target-distance bin: one bin
// per integer distance on unit-length graphs, `bins` equal-width bins over
// (0, max d] otherwise. Empty bins are omitted.
std::vector<HistBin> error_histogram(const Graph& g, const Layout& x, int bins = 1000);
std::vector<HistBin> error_histogram_sampled(const Graph& g, const Layout& x, int bins,
                                             std::size_t sources, Rng& rng);

struct MetricReport {
    double raw = 0;
    double scale = 0;
    double rescaled = 0;
    double normalized = 0;
    std::optional<double> procrustes;
    std::vector<double> jaccard_curve;  // empty when no reference layout
    std::vector<double> hull_curve;
    std::vector<HistBin> histogram;
};

// CSV blocks: `metric,key,value`, then `curve,name,k,value`, then
// `hist,bin_lo,bin_hi,min,p5,p25,median,p75,p95,max`.
void write_metric_report(std::ostream& out, const MetricReport& report);

}  // namespace sstress
