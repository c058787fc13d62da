#pragma once

#include <cstdint>

#include "sstress/graph.hpp"
#include "sstress/layout.hpp"

namespace sstress {

struct PivotMdsResult {
    Layout layout;
    std::size_t pivots_used = 0;  // after clamping to n
    bool clamped = false;         // requested pivot count exceeded n
    bool converged = true;        // power iteration reached tolerance
};

// Classical-MDS-style spectral layout from a pivot subset: pivots picked by
// farthest-first traversal, the n x p matrix of squared pivot distances is
// double-centered (row means, column means, grand mean, factor -1/2), the top
// `dim` eigenvectors of C^T C are found by seeded power iteration with
// Gram-Schmidt deflation (tolerance 1e-8, at most 1000 rounds), and
// coordinate column i is (C v_i) / sqrt(sigma_i) with sigma_i the singular
// value; with p = n this reproduces classical MDS.
PivotMdsResult pivot_mds(const Graph& g, std::size_t p, std::uint64_t seed, int dim = 2);

// Uniform scale so the drawn edge lengths sum to the edge-weight sum
// sum_E 1/len^2. Throws on an all-coincident layout.
void rescale_to_edge_weights(Layout& x, const Graph& g);

}  // namespace sstress
