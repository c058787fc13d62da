#include "sstress/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sstress/distances.hpp"
#include "sstress/shortest_paths.hpp"

namespace sstress {

Sampler sampler_from_name(const std::string& name) {
    if (name == "random") return Sampler::random;
    if (name == "mis") return Sampler::mis_filtration;
    if (name == "maxmin-euclid") return Sampler::maxmin_euclid;
    if (name == "maxmin-sp") return Sampler::maxmin_sp;
    if (name == "maxmin-random-sp") return Sampler::maxmin_random_sp;
    if (name == "kmeans-layout") return Sampler::kmeans_layout;
    if (name == "kmeans-sp") return Sampler::kmeans_sp;
    if (name == "kmeans-maxmin-sp") return Sampler::kmeans_plus_maxmin_sp;
    throw ConfigError("unknown sampler `" + name + "`");
}

const char* sampler_name(Sampler s) {
    switch (s) {
        case Sampler::random: return "random";
        case Sampler::mis_filtration: return "mis";
        case Sampler::maxmin_euclid: return "maxmin-euclid";
        case Sampler::maxmin_sp: return "maxmin-sp";
        case Sampler::maxmin_random_sp: return "maxmin-random-sp";
        case Sampler::kmeans_layout: return "kmeans-layout";
        case Sampler::kmeans_sp: return "kmeans-sp";
        case Sampler::kmeans_plus_maxmin_sp: return "kmeans-maxmin-sp";
    }
    return "?";
}

namespace {

void check_k(std::size_t k, NodeId n) {
    if (k < 1 || k > static_cast<std::size_t>(n))
        throw ConfigError("pivot count must be between 1 and the node count");
}

double sq_dist(const double* a, const double* b, int dim) {
    double sq = 0;
    for (int d = 0; d < dim; ++d) {
        double diff = a[d] - b[d];
        sq += diff * diff;
    }
    return sq;
}

}  // namespace

std::vector<NodeId> sample_pivots(const Graph& g, const SamplerConfig& cfg,
                                  const Layout* initial_layout) {
    check_k(cfg.k, g.node_count());
    bool needs_layout = cfg.strategy == Sampler::maxmin_euclid ||
                        cfg.strategy == Sampler::kmeans_layout ||
                        cfg.strategy == Sampler::kmeans_plus_maxmin_sp;
    if (needs_layout && initial_layout == nullptr)
        throw ConfigError(std::string(sampler_name(cfg.strategy)) +
                          " needs an initial layout");
    Rng rng = Rng(cfg.seed).split("sampler");
    switch (cfg.strategy) {
        case Sampler::random: return sample_random(g, cfg.k, rng);
        case Sampler::mis_filtration: return sample_mis_filtration(g, cfg.k, rng);
        case Sampler::maxmin_euclid: return sample_maxmin_euclid(*initial_layout, cfg.k, rng);
        case Sampler::maxmin_sp: return sample_maxmin_sp(g, cfg.k, rng);
        case Sampler::maxmin_random_sp: return sample_maxmin_random_sp(g, cfg.k, rng);
        case Sampler::kmeans_layout:
            return sample_kmeans_layout(*initial_layout, cfg.k, rng, cfg.kmeans_max_iters);
        case Sampler::kmeans_sp: return sample_kmeans_sp(g, cfg.k, rng, cfg.kmeans_max_iters);
        case Sampler::kmeans_plus_maxmin_sp:
            return sample_kmeans_plus_maxmin_sp(g, *initial_layout, cfg.k, rng,
                                                cfg.kmeans_max_iters);
    }
    throw ConfigError("unknown sampler");
}

std::vector<NodeId> sample_random(const Graph& g, std::size_t k, Rng& rng) {
    check_k(k, g.node_count());
    std::vector<NodeId> ids(g.node_count());
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(ids);
    ids.resize(k);
    return ids;
}

std::vector<NodeId> sample_mis_filtration(const Graph& g, std::size_t k, Rng& rng) {
    NodeId n = g.node_count();
    check_k(k, n);
    std::vector<NodeId> level(n);
    std::iota(level.begin(), level.end(), 0);  // V_0 = V
    std::vector<NodeId> prev;
    double threshold = 1;  // 2^0, independence distance of V_1
    while (level.size() > k) {
        prev = level;
        std::vector<NodeId> order = level;
        rng.shuffle(order);
        std::vector<char> blocked(n, 0);
        std::vector<NodeId> next;
        for (NodeId v : order) {
            if (blocked[v]) continue;
            next.push_back(v);
            for (const auto& near : sssp_within(g, v, threshold)) blocked[near.first] = 1;
        }
        level = std::move(next);
        threshold *= 2;
    }
    if (level.size() < k) {
        std::vector<char> taken(n, 0);
        for (NodeId v : level) taken[v] = 1;
        std::vector<NodeId> pool;
        for (NodeId v : prev)
            if (!taken[v]) pool.push_back(v);
        rng.shuffle(pool);
        for (std::size_t i = 0; level.size() < k; ++i) level.push_back(pool[i]);
    }
    return level;
}

void maxmin_sp_extend(const Graph& g, std::vector<NodeId>& pivots, std::size_t k,
                      std::vector<double>& min_dist) {
    NodeId n = g.node_count();
    std::vector<char> in_set(n, 0);
    for (NodeId p : pivots) in_set[p] = 1;
    std::vector<double> row(n);
    while (pivots.size() < k) {
        NodeId best = -1;
        for (NodeId v = 0; v < n; ++v) {
            if (in_set[v]) continue;
            if (best < 0 || min_dist[v] > min_dist[best]) best = v;  // strict: ties keep low id
        }
        pivots.push_back(best);
        in_set[best] = 1;
        sssp_row(g, best, row);
        for (NodeId v = 0; v < n; ++v) min_dist[v] = std::min(min_dist[v], row[v]);
    }
}

void maxmin_euclid_extend(const Layout& layout, std::vector<NodeId>& pivots, std::size_t k,
                          std::vector<double>& min_dist) {
    NodeId n = layout.node_count();
    std::vector<char> in_set(n, 0);
    for (NodeId p : pivots) in_set[p] = 1;
    while (pivots.size() < k) {
        NodeId best = -1;
        for (NodeId v = 0; v < n; ++v) {
            if (in_set[v]) continue;
            if (best < 0 || min_dist[v] > min_dist[best]) best = v;
        }
        pivots.push_back(best);
        in_set[best] = 1;
        for (NodeId v = 0; v < n; ++v)
            min_dist[v] = std::min(min_dist[v], layout.distance(best, v));
    }
}

std::vector<NodeId> sample_maxmin_sp(const Graph& g, std::size_t k, Rng& rng) {
    NodeId n = g.node_count();
    check_k(k, n);
    std::vector<NodeId> pivots{static_cast<NodeId>(rng.uniform_index(n))};
    std::vector<double> min_dist(n);
    sssp_row(g, pivots[0], min_dist);
    maxmin_sp_extend(g, pivots, k, min_dist);
    return pivots;
}

std::vector<NodeId> sample_maxmin_euclid(const Layout& layout, std::size_t k, Rng& rng) {
    NodeId n = layout.node_count();
    check_k(k, n);
    std::vector<NodeId> pivots{static_cast<NodeId>(rng.uniform_index(n))};
    std::vector<double> min_dist(n);
    for (NodeId v = 0; v < n; ++v) min_dist[v] = layout.distance(pivots[0], v);
    maxmin_euclid_extend(layout, pivots, k, min_dist);
    return pivots;
}

std::vector<NodeId> sample_maxmin_random_sp(const Graph& g, std::size_t k, Rng& rng) {
    NodeId n = g.node_count();
    check_k(k, n);
    std::vector<NodeId> pivots{static_cast<NodeId>(rng.uniform_index(n))};
    std::vector<char> in_set(n, 0);
    in_set[pivots[0]] = 1;
    std::vector<double> min_dist(n), row(n);
    sssp_row(g, pivots[0], min_dist);
    while (pivots.size() < k) {
        double total = 0;
        for (NodeId v = 0; v < n; ++v)
            if (!in_set[v]) total += min_dist[v];
        NodeId chosen = -1;
        if (total > 0) {
            double u = rng.uniform_real() * total;
            double acc = 0;
            for (NodeId v = 0; v < n; ++v) {
                if (in_set[v] || min_dist[v] <= 0) continue;
                acc += min_dist[v];
                chosen = v;  // last positive-weight node absorbs rounding
                if (u < acc) break;
            }
        } else {
            std::size_t target = rng.uniform_index(n - pivots.size());
            for (NodeId v = 0; v < n; ++v) {
                if (in_set[v]) continue;
                if (target == 0) {
                    chosen = v;
                    break;
                }
                --target;
            }
        }
        pivots.push_back(chosen);
        in_set[chosen] = 1;
        sssp_row(g, chosen, row);
        for (NodeId v = 0; v < n; ++v) min_dist[v] = std::min(min_dist[v], row[v]);
    }
    return pivots;
}

std::vector<NodeId> kmeanspp_seeds(const std::vector<double>& points, NodeId n, int dim,
                                   std::size_t k, Rng& rng) {
    std::vector<NodeId> chosen{static_cast<NodeId>(rng.uniform_index(n))};
    std::vector<char> in_set(n, 0);
    in_set[chosen[0]] = 1;
    std::vector<double> d2(n);
    auto point = [&](NodeId v) { return points.data() + static_cast<std::size_t>(v) * dim; };
    for (NodeId v = 0; v < n; ++v) d2[v] = sq_dist(point(v), point(chosen[0]), dim);
    while (chosen.size() < k) {
        double total = 0;
        for (NodeId v = 0; v < n; ++v)
            if (!in_set[v]) total += d2[v];
        NodeId next = -1;
        if (total > 0) {
            double u = rng.uniform_real() * total;
            double acc = 0;
            for (NodeId v = 0; v < n; ++v) {
                if (in_set[v] || d2[v] <= 0) continue;
                acc += d2[v];
                next = v;
                if (u < acc) break;
            }
        } else {
            for (NodeId v = 0; v < n; ++v) {
                if (!in_set[v]) {
                    next = v;
                    break;
                }
            }
        }
        chosen.push_back(next);
        in_set[next] = 1;
        for (NodeId v = 0; v < n; ++v) d2[v] = std::min(d2[v], sq_dist(point(v), point(next), dim));
    }
    return chosen;
}

std::vector<NodeId> lloyd_representatives(const std::vector<double>& points, NodeId n, int dim,
                                          const std::vector<NodeId>& seed_ids, int max_iters) {
    std::size_t k = seed_ids.size();
    auto point = [&](NodeId v) { return points.data() + static_cast<std::size_t>(v) * dim; };
    std::vector<double> centroids(k * dim);
    for (std::size_t c = 0; c < k; ++c)
        std::copy_n(point(seed_ids[c]), dim, centroids.data() + c * dim);
    std::vector<NodeId> assign(n, 0), prev;
    std::vector<std::size_t> count(k);
    for (int iter = 0; iter < max_iters; ++iter) {
        for (NodeId v = 0; v < n; ++v) {
            std::size_t best = 0;
            double best_d = sq_dist(point(v), centroids.data(), dim);
            for (std::size_t c = 1; c < k; ++c) {
                double d = sq_dist(point(v), centroids.data() + c * dim, dim);
                if (d < best_d) {  // strict: ties keep the lowest cluster index
                    best_d = d;
                    best = c;
                }
            }
            assign[v] = static_cast<NodeId>(best);
        }
        std::fill(count.begin(), count.end(), 0);
        for (NodeId v = 0; v < n; ++v) ++count[assign[v]];
        std::vector<char> stolen(n, 0);
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] > 0) continue;
            NodeId victim = -1;
            double victim_d = -1;
            for (NodeId v = 0; v < n; ++v) {
                if (stolen[v] || count[assign[v]] < 2) continue;
                double d = sq_dist(point(v), centroids.data() + assign[v] * dim, dim);
                if (d > victim_d) {  // strict: ties keep the smallest id
                    victim_d = d;
                    victim = v;
                }
            }
            --count[assign[victim]];
            assign[victim] = static_cast<NodeId>(c);
            count[c] = 1;
            stolen[victim] = 1;
        }
        std::fill(centroids.begin(), centroids.end(), 0.0);
        for (NodeId v = 0; v < n; ++v) {
            double* c = centroids.data() + static_cast<std::size_t>(assign[v]) * dim;
            const double* p = point(v);
            for (int d = 0; d < dim; ++d) c[d] += p[d];
        }
        for (std::size_t c = 0; c < k; ++c)
            for (int d = 0; d < dim; ++d) centroids[c * dim + d] /= static_cast<double>(count[c]);
        if (assign == prev) break;
        prev = assign;
    }
    std::vector<NodeId> reps(k, -1);
    std::vector<double> rep_d(k, 0);
    for (NodeId v = 0; v < n; ++v) {
        std::size_t c = assign[v];
        double d = sq_dist(point(v), centroids.data() + c * dim, dim);
        if (reps[c] < 0 || d < rep_d[c]) {  // strict: ties keep the smallest id
            reps[c] = v;
            rep_d[c] = d;
        }
    }
    return reps;
}

std::vector<NodeId> sample_kmeans_layout(const Layout& layout, std::size_t k, Rng& rng,
                                         int max_iters) {
    NodeId n = layout.node_count();
    check_k(k, n);
    auto seeds = kmeanspp_seeds(layout.data(), n, layout.dim(), k, rng);
    return lloyd_representatives(layout.data(), n, layout.dim(), seeds, max_iters);
}

std::vector<NodeId> sample_kmeans_sp(const Graph& g, std::size_t k, Rng& rng, int max_iters) {
    NodeId n = g.node_count();
    check_k(k, n);
    auto seeds = sample_maxmin_sp(g, k, rng);
    PivotDistances pd = mssp(g, seeds);
    // feature vector of node v = (d_{v,p}) over the k seed pivots
    std::vector<double> features(static_cast<std::size_t>(n) * k);
    for (std::size_t p = 0; p < k; ++p)
        for (NodeId v = 0; v < n; ++v)
            features[static_cast<std::size_t>(v) * k + p] = pd.d(p, v);
    return lloyd_representatives(features, n, static_cast<int>(k), seeds, max_iters);
}

std::vector<NodeId> sample_kmeans_plus_maxmin_sp(const Graph& g, const Layout& layout,
                                                 std::size_t k, Rng& rng, int max_iters) {
    NodeId n = g.node_count();
    check_k(k, n);
    if (k < 2) throw ConfigError("kmeans-maxmin-sp needs k >= 2");
    auto pivots = sample_kmeans_layout(layout, k / 2, rng, max_iters);
    std::vector<double> min_dist(n, kInfDist), row(n);
    for (NodeId p : pivots) {
        sssp_row(g, p, row);
        for (NodeId v = 0; v < n; ++v) min_dist[v] = std::min(min_dist[v], row[v]);
    }
    maxmin_sp_extend(g, pivots, k, min_dist);
    return pivots;
}

}  // namespace sstress
