#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "sstress/distances.hpp"
#include "sstress/errors.hpp"
#include "sstress/graph.hpp"
#include "sstress/sampling.hpp"
#include "oracles.hpp"

using namespace sstress;

namespace {

bool distinct_in_range(const std::vector<NodeId>& ids, NodeId n, std::size_t k) {
    if (ids.size() != k) return false;
    std::set<NodeId> seen(ids.begin(), ids.end());
    if (seen.size() != k) return false;
    return *seen.begin() >= 0 && *seen.rbegin() < n;
}

std::vector<NodeId> sorted_copy(std::vector<NodeId> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<NodeId> iota_ids(NodeId n) {
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

// Next pivot under the farthest-first rule: maximize the distance to the
// nearest pivot already chosen, ties to the lowest id. D is a full n x n
// distance matrix.
NodeId farthest_first_next(const std::vector<double>& D, NodeId n,
                           const std::vector<NodeId>& prefix) {
    std::vector<char> in(n, 0);
    for (NodeId p : prefix) in[p] = 1;
    NodeId best = -1;
    double best_d = -1;
    for (NodeId v = 0; v < n; ++v) {
        if (in[v]) continue;
        double md = oracle::kInf;
        for (NodeId p : prefix)
            md = std::min(md, D[static_cast<std::size_t>(p) * n + v]);
        if (best < 0 || md > best_d) {
            best = v;
            best_d = md;
        }
    }
    return best;
}

void check_farthest_first_suffix(const std::vector<double>& D, NodeId n,
                                 const std::vector<NodeId>& pivots, std::size_t from) {
    for (std::size_t i = from; i < pivots.size(); ++i) {
        std::vector<NodeId> prefix(pivots.begin(), pivots.begin() + i);
        CHECK(pivots[i] == farthest_first_next(D, n, prefix));
    }
}

std::vector<double> layout_distance_matrix(const Layout& x) {
    NodeId n = x.node_count();
    std::vector<double> d(static_cast<std::size_t>(n) * n);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b) d[static_cast<std::size_t>(a) * n + b] = x.distance(a, b);
    return d;
}

const std::vector<Sampler> kAllSamplers = {
    Sampler::random,          Sampler::mis_filtration, Sampler::maxmin_euclid,
    Sampler::maxmin_sp,       Sampler::maxmin_random_sp, Sampler::kmeans_layout,
    Sampler::kmeans_sp,       Sampler::kmeans_plus_maxmin_sp,
};

}  // namespace

TEST_SUITE_BEGIN("sampling");

TEST_CASE("sampler names round-trip and unknown names are rejected") {
    CHECK(sampler_from_name("random") == Sampler::random);
    CHECK(sampler_from_name("mis") == Sampler::mis_filtration);
    CHECK(sampler_from_name("maxmin-euclid") == Sampler::maxmin_euclid);
    CHECK(sampler_from_name("maxmin-sp") == Sampler::maxmin_sp);
    CHECK(sampler_from_name("maxmin-random-sp") == Sampler::maxmin_random_sp);
    CHECK(sampler_from_name("kmeans-layout") == Sampler::kmeans_layout);
    CHECK(sampler_from_name("kmeans-sp") == Sampler::kmeans_sp);
    CHECK(sampler_from_name("kmeans-maxmin-sp") == Sampler::kmeans_plus_maxmin_sp);
    for (Sampler s : kAllSamplers) CHECK(sampler_from_name(sampler_name(s)) == s);
    CHECK_THROWS_AS(sampler_from_name("space-filling"), ConfigError);
    CHECK_THROWS_AS(sampler_from_name(""), ConfigError);
}

TEST_CASE("every strategy yields k distinct in-range pivots, deterministically") {
    Graph g = make_grid(5, 6);
    Rng lr(77);
    Layout init = oracle::random_layout(lr, g.node_count(), 2);
    for (Sampler s : kAllSamplers) {
        CAPTURE(sampler_name(s));
        SamplerConfig cfg;
        cfg.strategy = s;
        cfg.k = 7;
        cfg.seed = 42;
        std::vector<NodeId> a = sample_pivots(g, cfg, &init);
        CHECK(distinct_in_range(a, g.node_count(), 7));
        std::vector<NodeId> b = sample_pivots(g, cfg, &init);
        CHECK(a == b);
    }
}

TEST_CASE("different seeds give different random samples") {
    Graph g = make_grid(5, 6);
    SamplerConfig cfg;
    cfg.strategy = Sampler::random;
    cfg.k = 7;
    cfg.seed = 1;
    std::vector<NodeId> a = sample_pivots(g, cfg, nullptr);
    cfg.seed = 2;
    std::vector<NodeId> b = sample_pivots(g, cfg, nullptr);
    CHECK(a != b);
}

TEST_CASE("pivot counts outside [1, n] are rejected") {
    Graph g = make_path(6);
    SamplerConfig cfg;
    cfg.strategy = Sampler::random;
    cfg.k = 0;
    CHECK_THROWS_AS(sample_pivots(g, cfg, nullptr), ConfigError);
    cfg.k = 7;
    CHECK_THROWS_AS(sample_pivots(g, cfg, nullptr), ConfigError);
    Rng rng(3);
    CHECK_THROWS_AS(sample_random(g, 0, rng), ConfigError);
    CHECK_THROWS_AS(sample_maxmin_sp(g, 7, rng), ConfigError);
    CHECK_THROWS_AS(sample_mis_filtration(g, 0, rng), ConfigError);
}

TEST_CASE("layout-based strategies require an initial layout") {
    Graph g = make_grid(4, 4);
    for (Sampler s : {Sampler::maxmin_euclid, Sampler::kmeans_layout,
                      Sampler::kmeans_plus_maxmin_sp}) {
        CAPTURE(sampler_name(s));
        SamplerConfig cfg;
        cfg.strategy = s;
        cfg.k = 4;
        CHECK_THROWS_AS(sample_pivots(g, cfg, nullptr), ConfigError);
    }
}

TEST_CASE("k equal to n selects every node") {
    Graph g = make_grid(4, 5);
    NodeId n = g.node_count();
    Rng rng(11);
    CHECK(sorted_copy(sample_random(g, n, rng)) == iota_ids(n));
    CHECK(sample_mis_filtration(g, n, rng) == iota_ids(n));
    CHECK(sorted_copy(sample_maxmin_sp(g, n, rng)) == iota_ids(n));
    CHECK(sorted_copy(sample_maxmin_random_sp(g, n, rng)) == iota_ids(n));
    CHECK(sorted_copy(sample_kmeans_sp(g, n, rng)) == iota_ids(n));
}

TEST_CASE("maxmin-sp grows farthest-first with ties to the lowest id") {
    // unweighted graphs keep all distances integral, so the brute-force
    // check by full distance matrix is exact
    Rng gr(20240817);
    for (const Graph& g : {make_grid(5, 6), oracle::random_connected(gr, 24, 12)}) {
        std::vector<double> D = oracle::floyd_warshall(g);
        Rng rng(9);
        std::vector<NodeId> pivots = sample_maxmin_sp(g, 8, rng);
        CHECK(distinct_in_range(pivots, g.node_count(), 8));
        check_farthest_first_suffix(D, g.node_count(), pivots, 1);
    }
}

TEST_CASE("maxmin extension keeps a caller-fixed prefix") {
    Graph g = make_grid(5, 6);
    std::vector<double> D = oracle::floyd_warshall(g);
    std::vector<NodeId> pivots{5};
    std::vector<double> min_dist(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        min_dist[v] = D[5 * static_cast<std::size_t>(g.node_count()) + v];
    maxmin_sp_extend(g, pivots, 6, min_dist);
    CHECK(pivots.size() == 6);
    CHECK(pivots[0] == 5);
    check_farthest_first_suffix(D, g.node_count(), pivots, 1);
    // min_dist must now reflect the whole pivot set
    for (NodeId v = 0; v < g.node_count(); ++v) {
        double md = oracle::kInf;
        for (NodeId p : pivots)
            md = std::min(md, D[static_cast<std::size_t>(p) * g.node_count() + v]);
        CHECK(min_dist[v] == md);
    }
}

TEST_CASE("maxmin-euclid grows farthest-first in layout space") {
    Rng lr(5);
    Layout x = oracle::random_layout(lr, 20, 2);
    std::vector<double> D = layout_distance_matrix(x);
    Rng rng(13);
    std::vector<NodeId> pivots = sample_maxmin_euclid(x, 8, rng);
    CHECK(distinct_in_range(pivots, 20, 8));
    check_farthest_first_suffix(D, 20, pivots, 1);
}

TEST_CASE("maxmin-random-sp samples are distinct and seed-sensitive") {
    Graph g = make_grid(5, 6);
    Rng a1(21), a2(21), b(22);
    std::vector<NodeId> s1 = sample_maxmin_random_sp(g, 10, a1);
    std::vector<NodeId> s2 = sample_maxmin_random_sp(g, 10, a2);
    std::vector<NodeId> s3 = sample_maxmin_random_sp(g, 10, b);
    CHECK(distinct_in_range(s1, g.node_count(), 10));
    CHECK(s1 == s2);
    CHECK(s1 != s3);
}

TEST_CASE("mis filtration keeps size-k subsets on stars and paths") {
    for (std::size_t k : {1u, 2u, 3u}) {
        Rng rng(100 + k);
        std::vector<NodeId> on_star = sample_mis_filtration(make_star(6), k, rng);
        CHECK(distinct_in_range(on_star, 7, k));
        std::vector<NodeId> on_path = sample_mis_filtration(make_path(15), k, rng);
        CHECK(distinct_in_range(on_path, 15, k));
    }
}

TEST_CASE("lloyd assigns ties to the lowest cluster and steals for empty ones") {
    // ids 0 and 1 coincide, so both seed centroids do as well; every point
    // first lands in cluster 0 and the empty cluster 1 steals the farthest
    // point (id 3). Convergence then pairs {0,1} and {2,3}; representative
    // ties go to the lower id.
    std::vector<double> pts{0, 0, 5, 6};
    std::vector<NodeId> reps = lloyd_representatives(pts, 4, 1, {0, 1}, 50);
    CHECK(reps == std::vector<NodeId>{0, 2});
}

TEST_CASE("lloyd returns the member nearest each centroid") {
    // clusters {0,2,3} and {10}: centroid 5/3 is nearest to the point at 2
    std::vector<double> pts{0, 2, 3, 10};
    std::vector<NodeId> reps = lloyd_representatives(pts, 4, 1, {0, 3}, 50);
    CHECK(reps == std::vector<NodeId>{1, 3});
}

TEST_CASE("lloyd separates well-split planar clusters") {
    std::vector<double> pts{0, 0,  1, 0,  0, 1,  1, 1,  0.5, 0.5,
                            100, 0,  101, 0,  100, 1,  101, 1,  100.5, 0.5};
    std::vector<NodeId> reps = lloyd_representatives(pts, 10, 2, {0, 5}, 50);
    CHECK(reps == std::vector<NodeId>{4, 9});
}

TEST_CASE("kmeans++ seeding falls back to the smallest unchosen ids") {
    // all points coincide: after the first uniform pick every squared
    // distance is zero, so the remaining seeds are the lowest free ids
    std::vector<double> pts(10, 3.25);  // five 2-d points at the same spot
    Rng rng(7);
    std::vector<NodeId> seeds = kmeanspp_seeds(pts, 5, 2, 3, rng);
    CHECK(distinct_in_range(seeds, 5, 3));
    std::vector<NodeId> expect_rest;
    for (NodeId v = 0; v < 5 && expect_rest.size() < 2; ++v)
        if (v != seeds[0]) expect_rest.push_back(v);
    CHECK(std::vector<NodeId>(seeds.begin() + 1, seeds.end()) == expect_rest);
}

TEST_CASE("kmeans-sp representatives are stable across calls") {
    Graph g = make_grid(6, 5);
    Rng a1(31), a2(31);
    std::vector<NodeId> r1 = sample_kmeans_sp(g, 6, a1);
    std::vector<NodeId> r2 = sample_kmeans_sp(g, 6, a2);
    CHECK(distinct_in_range(r1, g.node_count(), 6));
    CHECK(r1 == r2);
}

TEST_CASE("kmeans-maxmin-sp rejects k below two and extends farthest-first") {
    Graph g = make_grid(5, 6);
    Rng lr(55);
    Layout init = oracle::random_layout(lr, g.node_count(), 2);
    SamplerConfig cfg;
    cfg.strategy = Sampler::kmeans_plus_maxmin_sp;
    cfg.k = 1;
    cfg.seed = 4;
    CHECK_THROWS_AS(sample_pivots(g, cfg, &init), ConfigError);

    cfg.k = 8;
    std::vector<NodeId> pivots = sample_pivots(g, cfg, &init);
    CHECK(distinct_in_range(pivots, g.node_count(), 8));
    // the first k/2 pivots come from k-means on the layout; the rest must
    // obey the farthest-first rule against everything chosen so far
    std::vector<double> D = oracle::floyd_warshall(g);
    check_farthest_first_suffix(D, g.node_count(), pivots, 4);
}

TEST_SUITE_END();
