#pragma once

#include "sstress/distances.hpp"
#include "sstress/graph.hpp"
#include "sstress/layout.hpp"
#include "sstress/metrics.hpp"
#include "sstress/solver.hpp"

// Single-threaded counterparts of every OpenMP kernel. They share the
// per-element arithmetic with the parallel versions and enumerate in the
// same order, so tests can require bitwise-identical results at any thread
// count; the bench target times one against the other.
namespace sstress::reference {

PivotDistances mssp(const Graph& g, std::vector<NodeId> pivots);
double eccentricity_max(const Graph& g);
double full_stress_value(const TriDistances& dm, const Layout& x);
double sparse_stress_value(const Graph& g, const PivotDistances& pd, const Regions& regions,
                           const Layout& x);
StressSums stress_sums(const Graph& g, const Layout& x);
std::vector<std::pair<NodeId, NodeId>> gabriel_graph(const Layout& x);
std::vector<double> gabriel_jaccard(const Layout& ref, const Layout& cmp, int max_hops,
                                    Aggregate agg = Aggregate::mean);
std::vector<double> hull_error(const Graph& g, const Layout& x, int max_hops,
                               Aggregate agg = Aggregate::mean);
std::vector<HistBin> error_histogram(const Graph& g, const Layout& x, int bins = 1000);

}  // namespace sstress::reference
