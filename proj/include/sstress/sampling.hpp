#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sstress/graph.hpp"
#include "sstress/layout.hpp"
#include "sstress/rng.hpp"

namespace sstress {

enum class Sampler {
    random,
    mis_filtration,
    maxmin_euclid,
    maxmin_sp,
    maxmin_random_sp,
    kmeans_layout,
    kmeans_sp,
    kmeans_plus_maxmin_sp,
};

// CLI spellings: random, mis, maxmin-euclid, maxmin-sp, maxmin-random-sp,
// kmeans-layout, kmeans-sp, kmeans-maxmin-sp.
Sampler sampler_from_name(const std::string& name);
const char* sampler_name(Sampler s);

struct SamplerConfig {
    Sampler strategy = Sampler::kmeans_sp;
    std::size_t k = 200;
    std::uint64_t seed = 0;
    int kmeans_max_iters = 50;
};

// Dispatch on cfg.strategy. `initial_layout` is required by maxmin-euclid,
// kmeans-layout and kmeans-maxmin-sp; pass nullptr otherwise.
std::vector<NodeId> sample_pivots(const Graph& g, const SamplerConfig& cfg,
                                  const Layout* initial_layout);

std::vector<NodeId> sample_random(const Graph& g, std::size_t k, Rng& rng);
std::vector<NodeId> sample_mis_filtration(const Graph& g, std::size_t k, Rng& rng);
std::vector<NodeId> sample_maxmin_sp(const Graph& g, std::size_t k, Rng& rng);
std::vector<NodeId> sample_maxmin_euclid(const Layout& layout, std::size_t k, Rng& rng);
std::vector<NodeId> sample_maxmin_random_sp(const Graph& g, std::size_t k, Rng& rng);
std::vector<NodeId> sample_kmeans_layout(const Layout& layout, std::size_t k, Rng& rng,
                                         int max_iters = 50);
std::vector<NodeId> sample_kmeans_sp(const Graph& g, std::size_t k, Rng& rng, int max_iters = 50);
std::vector<NodeId> sample_kmeans_plus_maxmin_sp(const Graph& g, const Layout& layout,
                                                 std::size_t k, Rng& rng, int max_iters = 50);

// Farthest-first extension cores, reusable across strategies. `min_dist`
// holds, per node, the distance to the nearest current pivot; it must match
// `pivots` on entry (pass n infinities with an empty pivot list) and is
// updated in place. Argmax ties go to the smallest node id.
void maxmin_sp_extend(const Graph& g, std::vector<NodeId>& pivots, std::size_t k,
                      std::vector<double>& min_dist);
void maxmin_euclid_extend(const Layout& layout, std::vector<NodeId>& pivots, std::size_t k,
                          std::vector<double>& min_dist);

// Lloyd iterations over a generic point set (row-major n x dim). Initial
// centroids are the positions of `seed_ids`. Assignment ties take the lowest
// cluster index; empty clusters steal the point farthest from its own
// centroid (among clusters that keep at least one member, ties by id); stops
// on an assignment fixpoint or after max_iters rounds. Returns one
// representative per cluster: the member nearest its centroid, ties by id.
std::vector<NodeId> lloyd_representatives(const std::vector<double>& points, NodeId n, int dim,
                                          const std::vector<NodeId>& seed_ids, int max_iters);

// k-means++ seeding: first point uniform, then proportional to the squared
// distance to the nearest chosen point; if all remaining weights are zero,
// the smallest unchosen id is taken.
std::vector<NodeId> kmeanspp_seeds(const std::vector<double>& points, NodeId n, int dim,
                                   std::size_t k, Rng& rng);

}  // namespace sstress
